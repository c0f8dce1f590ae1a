use clap::Parser;

fn main() {
    let args = nv_odmr::cli::Args::parse();
    std::process::exit(nv_odmr::cli::main_with_args(&args));
}
