fn main() -> std::process::ExitCode {
    wreath::cli::run()
}
