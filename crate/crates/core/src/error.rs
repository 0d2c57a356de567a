use thiserror::Error;

/// Why a single-mode subproblem has no solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum InfeasibleReason {
    /// Local compute capacity cannot keep up with the decode rate
    /// (`k_ops * r_th >= f_op`, so no reception time is left).
    #[error("local compute too slow for the required rate")]
    ComputeTooSlow,
    /// The required power-splitting ratio reaches 1: the downlink cannot
    /// both decode at the target rate and leave anything to harvest.
    #[error("downlink channel too weak (required PS ratio >= 1)")]
    ChannelTooWeak,
    /// Fog compute plus result feedback consume the whole block.
    #[error("fog compute and feedback slots exhaust the block")]
    BudgetExhausted,
    /// Even at maximum transmit power the uplink cannot move the task
    /// data inside the remaining block time.
    #[error("uplink too slow at maximum transmit power")]
    UplinkTooSlow,
}

/// Feasibility verdict carrying the structured reason on rejection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Infeasible(InfeasibleReason),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }

    pub fn reason(&self) -> Option<InfeasibleReason> {
        match self {
            Feasibility::Feasible => None,
            Feasibility::Infeasible(r) => Some(*r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("distance {0} m below the {1} m validity floor of the path-loss model")]
    DistanceBelowFloor(f64, f64),
    #[error("zero channel vector has no beamforming direction")]
    ZeroChannel,
    #[error("argument outside the function domain: {0}")]
    Domain(String),
    #[error("mode infeasible: {0}")]
    Infeasible(#[from] InfeasibleReason),
    #[error("both modes infeasible (local: {local}, offload: {offload})")]
    BothModesInfeasible {
        local: InfeasibleReason,
        offload: InfeasibleReason,
    },
    #[error("exhaustive search refused for {0} users; cap is {1} (use the greedy scheduler)")]
    TooManyUsers(usize, usize),
    #[error("no feasible lattice point")]
    NoFeasiblePoint,
    #[error("no sign change in the oracle bracket: {0}")]
    NoCrossover(String),
    #[error("root finding failed: {0}")]
    RootFind(String),
}

pub type Result<T> = std::result::Result<T, Error>;
