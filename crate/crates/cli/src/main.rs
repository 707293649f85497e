use std::io::Write;

fn main() {
    let env_seed = std::env::var("DELTA_INV_SEED").ok();
    let out = cli::run(std::env::args(), env_seed.as_deref());
    if !out.stdout.is_empty() {
        let mut so = std::io::stdout().lock();
        let _ = so.write_all(out.stdout.as_bytes());
    }
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    std::process::exit(out.code);
}
