mod args;
mod batch;
mod run;

use std::io::Write;

use clap::Parser;
use wreathmac::par::Execution;

fn configure(jobs: usize) {
    if jobs == 1 {
        Execution::set_default(Execution::Sequential);
        return;
    }
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
}

fn main() {
    let cli = match args::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                run::EXIT_USAGE
            } else {
                run::EXIT_OK
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    configure(cli.global.jobs);
    let out = run::execute(&cli);
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr.trim_end());
    }
    std::process::exit(out.code);
}
