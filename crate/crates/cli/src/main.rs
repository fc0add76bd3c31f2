use clap::Parser;

fn main() {
    // die quietly when the consumer of a pipe goes away (e.g. `... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match hilbfano_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints usage errors itself; exit code 2 for bad input,
            // 0 for --help/--version
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    std::process::exit(hilbfano_cli::run(cli));
}
