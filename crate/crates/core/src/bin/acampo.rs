fn main() {
    std::process::exit(acampo::cli::cli_main(std::env::args_os()));
}
