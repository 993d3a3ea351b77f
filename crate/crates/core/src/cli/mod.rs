//! Session files, task dispatch, reports and the random search harness.

mod report;
mod resolve;
mod search;
mod session;

pub use report::{
    execute, run_tasks, ReportDocument, RunFlags, Summary, TaskEntry, TaskError, EXIT_AGREEMENT, EXIT_OK, EXIT_PARSE,
    EXIT_TASK_ERROR, SCHEMA_VERSION,
};
pub use resolve::{Environment, Job, PreparedTask};
pub use search::{
    generate, hypersurface_instance, instance_rng, random_search, tower_instance, Counterexample, Family, Instance,
    SearchConfig, SearchReport, SearchTarget,
};
pub use session::{parse_session, parse_syntax, Assign, Decl, Item, SessionFile, Span, Task, TaskKind, Value};
