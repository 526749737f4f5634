"""OAM versus correlated MIMO on aligned uniform circular arrays."""

__version__ = "0.1.0"

from .errors import (AliasingError, ConfigError, DomainError, NotPSDError,  # noqa: E402
                     OamMimoError, ShapeError)
from .geometry import FarFieldWarning, UcaPair  # noqa: E402
from .mimo import (AngularSpread, LinkBudget, MimoChannel, SpatialCorrelation,  # noqa: E402
                   correlation_coeff, correlation_matrix, los_matrix, normalization_kappa,
                   synthesize_channel)
from .oam import (ModeSet, ModeSignal, OamChannel, alias_canonical,  # noqa: E402
                  demux_phase_sum, demux_project, mode_range, mux_excitation,
                  oam_channel_matrix)
from .metrics import (CapacityReport, capacity_mimo, capacity_oam, dof_mimo,  # noqa: E402
                      dof_ratio, effective_rank, ergodic_capacity_mimo)
