use clap::Parser;

fn main() {
    let cli = rmt_cli::Cli::parse(); // exits 2 on usage errors
    match rmt_cli::run(cli) {
        Ok(stdout_text) => {
            print!("{stdout_text}");
        }
        Err(e) => {
            eprintln!("rmt: {e}");
            std::process::exit(1);
        }
    }
}
