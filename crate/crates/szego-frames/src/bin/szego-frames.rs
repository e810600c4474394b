fn main() {
    std::process::exit(szego_frames::cli::run(std::env::args_os()));
}
