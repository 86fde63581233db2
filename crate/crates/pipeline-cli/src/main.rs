use std::path::Path;
use std::process::ExitCode;

use pipeline_cli::{
    emit_plots, load_config, write_decomposition, write_dm_tests, write_forecast_reports,
    Experiment,
};

const USAGE: &str = "\
usage: namemd <command> <arg>

commands:
  decompose <config>   run NA-MEMD; write imfs_<channel>.csv and diagnostics.csv
  forecast <config>    run the model grid; write report.json and report_table.csv
  report <config>      full run: decomposition artifacts, reports and dm_tests.json
  plot <dir>           render SVG plots from a directory written by `report`

The config is a `key = value` file; see the project README for the keys.";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (command, arg) = match args.as_slice() {
        [command, arg] => (command.as_str(), arg.as_str()),
        _ => {
            eprintln!("{USAGE}");
            return ExitCode::from(2);
        }
    };
    match run(command, arg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {}", message.replace('\n', "; "));
            ExitCode::FAILURE
        }
    }
}

fn run(command: &str, arg: &str) -> Result<(), String> {
    match command {
        "decompose" => {
            let config = load_config(Path::new(arg)).map_err(|e| e.to_string())?;
            let out = config.output_dir.clone();
            let experiment = Experiment::new(config).map_err(|e| e.to_string())?;
            let files = write_decomposition(&experiment, &out).map_err(|e| e.to_string())?;
            print_files(&files);
            Ok(())
        }
        "forecast" => {
            let config = load_config(Path::new(arg)).map_err(|e| e.to_string())?;
            let out = config.output_dir.clone();
            let experiment = Experiment::new(config).map_err(|e| e.to_string())?;
            let artifacts = experiment.run().map_err(|e| e.to_string())?;
            let files = write_forecast_reports(&artifacts, &out).map_err(|e| e.to_string())?;
            print_files(&files);
            Ok(())
        }
        "report" => {
            let config = load_config(Path::new(arg)).map_err(|e| e.to_string())?;
            let out = config.output_dir.clone();
            let experiment = Experiment::new(config).map_err(|e| e.to_string())?;
            let mut files = write_decomposition(&experiment, &out).map_err(|e| e.to_string())?;
            let artifacts = experiment.run().map_err(|e| e.to_string())?;
            files.extend(write_forecast_reports(&artifacts, &out).map_err(|e| e.to_string())?);
            files.push(write_dm_tests(&artifacts, &out).map_err(|e| e.to_string())?);
            print_files(&files);
            Ok(())
        }
        "plot" => {
            let files = emit_plots(Path::new(arg)).map_err(|e| e.to_string())?;
            print_files(&files);
            Ok(())
        }
        other => Err(format!("unknown command `{other}`; {USAGE}")),
    }
}

fn print_files(files: &[std::path::PathBuf]) {
    for file in files {
        println!("{}", file.display());
    }
}
