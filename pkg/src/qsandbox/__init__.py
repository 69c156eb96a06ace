"""qsandbox: proximity-coupled qubit sandbox.

Exact density-matrix simulation of 1-3 qubits whose pairwise Heisenberg
exchange coupling follows spatial proximity, with gates, entanglement
metrics, projective measurement, a scenario CLI and a live cockpit service.
"""

from .entropy import EntanglementReport, build_report, pairwise_entanglement, renyi2
from .errors import ContractError, EngineHalt, NumericError, ScriptError, WireError
from .exchange import (
    CouplingParams,
    PairCoupling,
    coupling_strength,
    exchange_unitary_closed,
    heisenberg_two_spin,
    shifted_hamiltonian,
)
from .gates import GateSpec, apply_unitary, embed_gate, gate_matrix, make_bell
from .measure import MeasurementOutcome, measure_collapse, outcome_probabilities, projector_z
from .scene import Scene, overlap_indicator
from .scenario import parse_script, run_scenario
from .states import (
    BlochAngles,
    BlochVector,
    DensityMatrix,
    PureState,
    bloch_from_density,
    bloch_radius,
    density_from_state,
    density_from_vector,
    partial_trace,
    state_from_angles,
    validate_density,
)

__version__ = "0.1.0"
