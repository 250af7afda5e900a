use clap::Parser;

fn main() {
    let cli = eoq_cli::Cli::parse();
    std::process::exit(eoq_cli::run(cli));
}
