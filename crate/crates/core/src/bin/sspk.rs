fn main() {
    std::process::exit(ssp_kernels::cli::main_with_args(std::env::args_os()));
}
