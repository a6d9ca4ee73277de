use std::io;

fn main() {
    let code = c3_remodel::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
