//! Config-driven run through the same path as the command-line tool,
//! without touching the disk.

use nv_odmr::cli::{run, RunConfig};

const CONFIG: &str = r#"
schema_version = 1
mode = "rf-frequency-map"
output_path = "map.csv"

[strain]
n_points = 8

[sweep]
start = 2.864e9
stop = 2.876e9
n = 25

[rows]
values = [5e6]
"#;

fn main() -> nv_odmr::Result<()> {
    let cfg = RunConfig::from_toml(CONFIG)?;
    let out = run(&cfg, None)?;
    for f in &out.files {
        println!("{} ({} bytes)", f.path.display(), f.bytes.len());
    }
    println!("content hash {}", out.content_hash);
    let index = String::from_utf8_lossy(&out.files[0].bytes);
    print!("{index}");
    Ok(())
}
