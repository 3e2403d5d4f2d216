use clap::Parser;
use hyperxform_cli::{args::Cli, run, Outcome};

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli, &mut std::io::stdout().lock()) {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            eprintln!("error: {e}");
            Outcome::InputError.code()
        }
    };
    std::process::exit(code);
}
