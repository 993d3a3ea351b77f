//! Parse and run a session file, printing the text report and the JSON.

use socle_lab::cli::{parse_session, run_tasks, RunFlags};
use socle_lab::local::DEFAULT_MAX_PRECISION;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sessions/tour.session").to_string());
    let session = parse_session(&std::fs::read_to_string(&path)?)?;
    println!("{} declarations, {} tasks\n", session.decls().count(), session.tasks().count());
    let flags = RunFlags {
        max_precision: DEFAULT_MAX_PRECISION,
        jobs: Some(2),
    };
    let doc = run_tasks(&session, &flags)?;
    print!("{}", doc.to_text());
    println!("\nexit code {}", doc.exit_code());
    Ok(())
}
