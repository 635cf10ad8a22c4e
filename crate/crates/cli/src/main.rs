use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("COGSIMP_LOG", "warn")).init();
    let cli = cogsimp_cli::Cli::parse();
    if let Err(e) = cogsimp_cli::run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
