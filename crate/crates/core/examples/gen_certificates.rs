//! Writes the synthetic example certificates to `data/certificates/`.

use std::path::PathBuf;

use ntriv::certify::samples;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/certificates"));
    std::fs::create_dir_all(&dir)?;
    for (name, cert) in samples::shipped() {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, cert.to_json() + "\n")?;
        println!("{}", path.display());
    }
    Ok(())
}
