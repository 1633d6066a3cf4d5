use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env_seed = std::env::var(singidx_cli::SEED_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = singidx_cli::run(std::env::args_os(), env_seed.as_deref(), &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
