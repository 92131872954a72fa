// Driving the batch front-end from code: resolve a configuration, run it,
// and read back the manifest.
//
// Run with `cargo run --release --example batch_run`.

use spinlyap::cli::{run, CommandKind, ConfigFile, Overrides, RunConfig};

/// Names of the files written.
pub fn run_example() -> spinlyap::Result<Vec<String>> {
    let out = std::env::temp_dir().join(format!("spinlyap-batch-example-{}", std::process::id()));
    let overrides = Overrides {
        n: vec![100],
        t_max: Some(1.0),
        t_steps: Some(21),
        out: Some(out.clone()),
        ..Default::default()
    };
    let config = RunConfig::resolve(CommandKind::Gain, None, ConfigFile::default(), &overrides)?;
    let written = run(&config)?;
    let names: Vec<String> = written
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    println!("wrote {} into {}", names.join(", "), out.display());
    print!("{}", std::fs::read_to_string(out.join("growth.csv"))?);
    std::fs::remove_dir_all(&out)?;
    Ok(names)
}

fn main() -> spinlyap::Result<()> {
    run_example().map(|_| ())
}
