use clap::Parser;

fn main() {
    let cli = dsmult::cli::Cli::parse();
    match dsmult::cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
