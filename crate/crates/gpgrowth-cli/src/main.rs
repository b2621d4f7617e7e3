use clap::Parser;

fn main() {
    let cli = gpgrowth_cli::Cli::parse();
    match gpgrowth_cli::run(&cli) {
        Ok(out) => {
            print!("{}", out.rendered);
            std::process::exit(out.exit_code);
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}
