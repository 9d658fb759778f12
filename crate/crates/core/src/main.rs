fn main() {
    let outcome = lyndon_pbw::cli::run_args(std::env::args_os().skip(1));
    if outcome.status == 2 {
        eprint!("{}", outcome.output);
    } else {
        print!("{}", outcome.output);
    }
    std::process::exit(outcome.status);
}
