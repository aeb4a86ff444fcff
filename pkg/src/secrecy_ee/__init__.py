"""Energy-efficient relay power allocation for secure AF massive-MIMO relaying."""
from .errors import (
    ConfigError,
    InfeasibleScenarioError,
    InvalidInputError,
    InvalidParamsError,
    NoPositiveSolutionError,
    SecrecyEEError,
)
from .model import (
    DerivedCoefficients,
    SystemParams,
    capacity_derivative,
    db_to_linear,
    derive_coefficients,
    linear_to_db,
    secrecy_energy_efficiency,
    secrecy_outage_capacity,
    total_power,
)
from .montecarlo import (
    ChannelRealization,
    OutageEstimate,
    empirical_outage_probability,
    empirical_secrecy_outage_capacity,
    instantaneous_snrs,
    sample_channels,
)
from .optimizer import (
    AllocationResult,
    SolverConfig,
    capacity_max_allocation,
    dinkelbach_solve,
    effective_power_cap,
    solve_inner,
    theta_update,
)

__version__ = "0.1.0"
