use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var(ratdec::cli::SEED_ENV).ok();
    let out = ratdec::cli::run_from(std::env::args_os(), seed.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
