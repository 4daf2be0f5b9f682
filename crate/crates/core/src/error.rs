use thiserror::Error;

pub type Result<T> = std::result::Result<T, WmError>;

#[derive(Debug, Error)]
pub enum WmError {
    #[error("horizon overflow: need {needed} but horizon is {horizon}")]
    HorizonOverflow { needed: u128, horizon: usize },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("degenerate equation: {0}")]
    DegenerateEquation(String),

    #[error("fixed-point precision insufficient: {bits} fractional bits, need at least {needed}")]
    PrecisionInsufficient { bits: u32, needed: u32 },

    #[error("degree gap violated: deg p1 = {deg1}, deg p2 = {deg2}, need deg p1 <= deg p2 - 2")]
    DegreeGap { deg1: usize, deg2: usize },

    #[error("too many columns: {0} (limit is 20)")]
    ColumnBudget(usize),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("corrupt input: {0}")]
    Corrupt(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl WmError {
    /// Budget and overflow failures, as opposed to malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            WmError::HorizonOverflow { .. }
                | WmError::Budget(_)
                | WmError::ColumnBudget(_)
                | WmError::Overflow(_)
        )
    }
}
