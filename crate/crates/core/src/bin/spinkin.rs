fn main() {
    let env_tol = std::env::var(spinkin::cli::TOL_ENV).ok();
    let code = spinkin::cli::run(
        std::env::args_os(),
        env_tol.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
