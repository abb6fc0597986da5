fn main() -> std::process::ExitCode {
    vesd::harness::pin_mmap_threshold();
    vesd::cli::main()
}
