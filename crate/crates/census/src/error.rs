use thiserror::Error;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("set size {0} is not supported (use 1..=4)")]
    UnsupportedSize(usize),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error(
        "n = {n} needs up to {needed} stored keys but the budget is {budget}; \
         restrict to the symmetric counts (--which sym,symcomm) and run with --stretch"
    )]
    ResourceBudget { n: usize, needed: u64, budget: u64 },
    #[error("invalid --which flag `{0}` (expected left, lr, sym, symcomm)")]
    BadFlag(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
