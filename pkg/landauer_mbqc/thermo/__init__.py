"""Landauer heat, memory ledger and Sagawa-Ueda bounds."""

from landauer_mbqc.thermo.constants import LN2, NATURAL, SI, PhysicalConstants, landauer_heat
from landauer_mbqc.thermo.ledger import (
    LedgerAction,
    LedgerEvent,
    ThermoLedger,
    cluster_memory_trace,
    ledger_checkpoint,
    ledger_erase,
    ledger_store,
    steady_state_memory,
)
from landauer_mbqc.thermo.memory import (
    MemoryModel,
    SagawaUedaBound,
    canonical_populations,
    free_energy,
    log_partition_function,
    partition_function,
    sagawa_ueda_bound,
)
from landauer_mbqc.thermo.report import THERMO_SCHEMA, ThermoReport, mbqc_heat_report

__all__ = [
    'LN2',
    'SI',
    'NATURAL',
    'PhysicalConstants',
    'landauer_heat',
    'LedgerAction',
    'LedgerEvent',
    'ThermoLedger',
    'ledger_store',
    'ledger_erase',
    'ledger_checkpoint',
    'steady_state_memory',
    'cluster_memory_trace',
    'MemoryModel',
    'SagawaUedaBound',
    'partition_function',
    'log_partition_function',
    'canonical_populations',
    'free_energy',
    'sagawa_ueda_bound',
    'THERMO_SCHEMA',
    'ThermoReport',
    'mbqc_heat_report',
]
