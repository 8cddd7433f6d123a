"""Heat report of an MBQC run (schema "thermo/1")."""

import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from landauer_mbqc import __version__
from landauer_mbqc.config import Tolerances
from landauer_mbqc.engine import TrajectoryEnsemble
from landauer_mbqc.graphstate import ClusterLayout
from landauer_mbqc.thermo.constants import LN2, SI, PhysicalConstants, landauer_heat
from landauer_mbqc.thermo.ledger import cluster_memory_trace, steady_state_memory
from landauer_mbqc.thermo.memory import MemoryModel, sagawa_ueda_bound

logger = logging.getLogger(__name__)

THERMO_SCHEMA = "thermo/1"

# symmetric two-level degenerate memory used for the Sagawa-Ueda chain
SYMMETRIC_MEMORY_LEVELS = (0.0, 0.0)


class ThermoReport(BaseModel):
    """
    Entropy, Landauer floors and cluster-policy heat of a trajectory ensemble.

    SI reports carry joule fields (`*_J`, `temperature_K`); natural-unit
    reports replace them with multiples of ln 2 (`*_ln2`, `temperature`).
    """
    model_config = ConfigDict(populate_by_name=True)

    schema_tag: str = Field(default=THERMO_SCHEMA, alias="schema")
    tool_version: str = __version__
    seed: int = 0
    tolerances: Dict[str, float]
    natural_units: bool
    temperature_K: Optional[float] = None
    temperature: Optional[float] = None
    pattern: Dict[str, Any]
    n_register: int
    n_resource_qubits: int
    measured_layers: int
    num_trajectories: int
    entropy_bits: float
    entropy_nats: float
    eq3_floor_bits: float
    erased_bits: int
    steady_state_stored_bits: List[int]
    include_final_erasure: bool
    heat_J: Optional[float] = None
    floor_heat_J: Optional[float] = None
    eq3_floor_heat_J: Optional[float] = None
    min_erasure_work_J: Optional[float] = None
    delta_f_J: Optional[float] = None
    heat_ln2: Optional[float] = None
    floor_heat_ln2: Optional[float] = None
    eq3_floor_heat_ln2: Optional[float] = None
    min_erasure_work_ln2: Optional[float] = None
    delta_f_ln2: Optional[float] = None
    per_register_qubit_bits: float
    per_resource_qubit_bits: float
    steady_state_bits_per_register_qubit: float
    eq3_floor_met: bool
    sagawa_ueda_chain_pass: bool
    passed: bool = Field(alias="pass")

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True, exclude_none=True)


def mbqc_heat_report(
    ensemble: TrajectoryEnsemble,
    layout: ClusterLayout,
    temperature: float,
    constants: PhysicalConstants = SI,
    include_final_erasure: bool = True,
    tolerances: Optional[Tolerances] = None,
    seed: int = 0
) -> ThermoReport:
    """
    Heat accounting for an enumerated MBQC run.

    `pass` means the cluster policy erases at least the Landauer floor
    kT ln2 * H(p). `eq3_floor_met` tests H >= 2n bits and
    `sagawa_ueda_chain_pass` tests W_min >= 2n kT ln 2 for a symmetric
    memory, where W_min = kT H_nats - delta_F.

    Args:
        ensemble: Enumerated trajectories of a layer-ordered pattern
        layout: Resource layout
        temperature: Bath temperature (K, or dimensionless in natural units)
        constants: Constant set
        include_final_erasure: Erase the final record at the end of the run
        tolerances: Slack for the bit comparisons
        seed: Seed recorded in the report

    Returns:
        ThermoReport
    """
    tolerances = tolerances or Tolerances()
    slack = tolerances.entropy_bound
    pattern = ensemble.pattern
    n = layout.rows

    entropy_bits = ensemble.entropy_bits()
    eq3_floor_bits = float(2 * n)
    ledger = cluster_memory_trace(pattern, layout, include_final_erasure, temperature, constants)
    steady = steady_state_memory(ledger)

    memory = MemoryModel.symmetric(len(ensemble), SYMMETRIC_MEMORY_LEVELS, temperature, constants)
    bound = sagawa_ueda_bound(memory, ensemble.distribution())

    heat = ledger.heat_joules
    floor_heat = landauer_heat(entropy_bits, temperature, constants)
    eq3_heat = landauer_heat(eq3_floor_bits, temperature, constants)
    kt_ln2 = constants.kt(temperature) * LN2

    erased = ledger.erased_bits_total
    passed = erased >= entropy_bits - slack
    eq3_met = entropy_bits >= eq3_floor_bits - slack
    chain_pass = bound.min_work / kt_ln2 >= eq3_floor_bits - slack

    if constants.natural_units:
        energy_fields = {
            "temperature": temperature,
            "heat_ln2": heat / LN2,
            "floor_heat_ln2": floor_heat / LN2,
            "eq3_floor_heat_ln2": eq3_heat / LN2,
            "min_erasure_work_ln2": bound.min_work / LN2,
            "delta_f_ln2": bound.delta_f / LN2,
        }
    else:
        energy_fields = {
            "temperature_K": temperature,
            "heat_J": heat,
            "floor_heat_J": floor_heat,
            "eq3_floor_heat_J": eq3_heat,
            "min_erasure_work_J": bound.min_work,
            "delta_f_J": bound.delta_f,
        }

    log = logger.info if passed else logger.warning
    log(f"Heat report: H={entropy_bits:.12f} bits, erased {erased} bits, floor {'met' if passed else 'NOT met'}")

    return ThermoReport(
        seed=seed,
        tolerances=tolerances.model_dump(),
        natural_units=constants.natural_units,
        pattern=pattern.describe(),
        n_register=n,
        n_resource_qubits=layout.num_qubits,
        measured_layers=pattern.measured_layers(),
        num_trajectories=len(ensemble),
        entropy_bits=entropy_bits,
        entropy_nats=bound.h_nats,
        eq3_floor_bits=eq3_floor_bits,
        erased_bits=erased,
        steady_state_stored_bits=steady,
        include_final_erasure=include_final_erasure,
        per_register_qubit_bits=erased / n,
        per_resource_qubit_bits=erased / layout.num_qubits,
        steady_state_bits_per_register_qubit=(max(steady) if steady else ledger.peak_stored_bits) / n,
        eq3_floor_met=eq3_met,
        sagawa_ueda_chain_pass=chain_pass,
        passed=passed,
        **energy_fields,
    )
