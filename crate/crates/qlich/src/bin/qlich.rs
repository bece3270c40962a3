use qlich::cli::{run_from_args, write_out};

fn main() {
    match run_from_args(std::env::args()) {
        Ok(run) => {
            print!("{}", run.rendered);
            if !run.rendered.ends_with('\n') {
                println!();
            }
            if let Err(e) = write_out(&run) {
                eprintln!("error writing --out file: {e}");
                std::process::exit(2);
            }
            std::process::exit(run.exit_code);
        }
        Err(failure) => {
            if failure.use_stdout {
                println!("{}", failure.message);
            } else {
                eprintln!("{}", failure.message);
            }
            std::process::exit(failure.exit_code);
        }
    }
}
