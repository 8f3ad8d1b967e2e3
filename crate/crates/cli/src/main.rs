use std::io::Write;

fn main() {
    let out = tiltkit_cli::main_with(std::env::args().skip(1).collect());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
