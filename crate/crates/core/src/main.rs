fn main() -> std::process::ExitCode {
    dfsgf::cli::main()
}
