//! Binary entry point: dispatch, then map failures to exit codes with
//! the error name on the final stderr line.

fn main() {
    if let Err(e) = macsep_cli::run() {
        eprintln!("error: {}", e.message());
        eprintln!("{}", e.name());
        std::process::exit(e.exit_code());
    }
}
