use std::process::ExitCode;

use fburgers::{parse_config, run_simulation, write_outputs, Error};

const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cfg = match parse_config(std::env::args_os().skip(1)) {
        Ok(cfg) => cfg,
        Err(Error::Help(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("fburgers: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let result = match run_simulation(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("fburgers: {e}");
            return ExitCode::from(4);
        }
    };
    if let Err(e) = write_outputs(&result, &cfg) {
        eprintln!("fburgers: writing {}: {e}", cfg.output_dir.display());
        return ExitCode::from(1);
    }

    let last = result.final_record();
    println!(
        "{}: {} steps, t = {:.6}, l2 = {:.6e}, min slope = {:.6e}",
        result.status.as_str(),
        result.steps(),
        last.t,
        last.l2,
        last.min_slope
    );
    if let Some(t) = result.report.detected_t {
        println!(
            "detected {} at t = {t:.6}",
            result.report.detection_cause.as_str()
        );
    }
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    ExitCode::from(result.status.exit_code() as u8)
}
