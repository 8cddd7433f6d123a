"""
Classical-memory ledger.

Storing bits is free; erasing them costs k*T*ln 2 per bit. The ledger is an
immutable pydantic model: every operation returns an updated copy.
"""

import logging
from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field

from landauer_mbqc.engine import MeasurementPattern
from landauer_mbqc.errors import InvalidInputError
from landauer_mbqc.graphstate import ClusterLayout
from landauer_mbqc.thermo.constants import SI, PhysicalConstants, landauer_heat

logger = logging.getLogger(__name__)


class LedgerAction(str, Enum):
    """Enum for ledger event kinds."""
    STORE = "store"
    ERASE = "erase"
    CHECKPOINT = "checkpoint"


class LedgerEvent(BaseModel):
    """One ledger entry; for checkpoints `bits` is the stored count."""
    model_config = ConfigDict(frozen=True)

    label: str
    action: LedgerAction
    bits: int = Field(ge=0)


class ThermoLedger(BaseModel):
    """Memory counters and the heat of everything erased so far."""
    model_config = ConfigDict(frozen=True)

    temperature: float = Field(gt=0)
    constants: PhysicalConstants = SI
    stored_bits: int = Field(default=0, ge=0)
    erased_bits_total: int = Field(default=0, ge=0)
    events: Tuple[LedgerEvent, ...] = ()

    @property
    def heat_joules(self) -> float:
        """erased_bits_total * k*T*ln 2 (multiples of T in natural units)."""
        return landauer_heat(self.erased_bits_total, self.temperature, self.constants)

    @property
    def peak_stored_bits(self) -> int:
        peak = stored = 0
        for event in self.events:
            if event.action is LedgerAction.STORE:
                stored += event.bits
            elif event.action is LedgerAction.ERASE:
                stored -= event.bits
            peak = max(peak, stored)
        return peak


def _append(ledger: ThermoLedger, event: LedgerEvent, **changes) -> ThermoLedger:
    return ledger.model_copy(update={**changes, "events": ledger.events + (event,)})


def _check_bits(bits: int) -> None:
    if not isinstance(bits, int) or bits < 0:
        raise InvalidInputError(f"Bit count must be a non-negative integer, got {bits!r}")


def ledger_store(ledger: ThermoLedger, label: str, bits: int) -> ThermoLedger:
    """Record `bits` newly stored bits (no heat)."""
    _check_bits(bits)
    return _append(
        ledger,
        LedgerEvent(label=label, action=LedgerAction.STORE, bits=bits),
        stored_bits=ledger.stored_bits + bits,
    )


def ledger_erase(ledger: ThermoLedger, label: str, bits: int) -> ThermoLedger:
    """
    Erase `bits` stored bits.

    Raises:
        InvalidInputError: If more bits are erased than are stored
    """
    _check_bits(bits)
    if bits > ledger.stored_bits:
        raise InvalidInputError(f"Cannot erase {bits} bits at {label!r}: only {ledger.stored_bits} stored")
    if bits == 0:
        return ledger
    return _append(
        ledger,
        LedgerEvent(label=label, action=LedgerAction.ERASE, bits=bits),
        stored_bits=ledger.stored_bits - bits,
        erased_bits_total=ledger.erased_bits_total + bits,
    )


def ledger_checkpoint(ledger: ThermoLedger, label: str) -> ThermoLedger:
    """Snapshot the stored-bit count."""
    return _append(ledger, LedgerEvent(label=label, action=LedgerAction.CHECKPOINT, bits=ledger.stored_bits))


def steady_state_memory(ledger: ThermoLedger) -> List[int]:
    """Stored-bit snapshots after the first layer (warm-up) has passed."""
    checkpoints = [e.bits for e in ledger.events if e.action is LedgerAction.CHECKPOINT]
    return checkpoints[1:]


def _layer_sizes(pattern: MeasurementPattern, layout: ClusterLayout) -> List[int]:
    if pattern.layout != layout:
        raise InvalidInputError("Pattern runs on a different layout")
    if not pattern.is_layer_ordered():
        raise InvalidInputError("Memory trace needs a pattern that measures layers in order")
    layers = pattern.measured_layers()
    if layers * layout.rows != len(pattern.steps):
        raise InvalidInputError("Memory trace needs a pattern that measures whole leading layers")
    return [layout.rows] * layers


def cluster_memory_trace(
    pattern: MeasurementPattern,
    layout: ClusterLayout,
    include_final_erasure: bool = True,
    temperature: float = 300.0,
    constants: PhysicalConstants = SI
) -> ThermoLedger:
    """
    Ledger of the two-layer memory policy for a cluster run.

    After layer t (1-based) its n outcome bits are stored and, for t >= 3,
    the bits of layer t-2 are erased, so at most two layers (2n bits) are
    held between layers. The remaining bits are erased at the end unless
    `include_final_erasure` is False.

    Raises:
        InvalidInputError: If the pattern is not layer-ordered over whole layers
    """
    sizes = _layer_sizes(pattern, layout)
    ledger = ThermoLedger(temperature=temperature, constants=constants)
    for t, size in enumerate(sizes, start=1):
        ledger = ledger_store(ledger, f"layer {t}", size)
        if t >= 3:
            ledger = ledger_erase(ledger, f"layer {t - 2}", sizes[t - 3])
        ledger = ledger_checkpoint(ledger, f"after layer {t}")
    if include_final_erasure:
        ledger = ledger_erase(ledger, "end of run", ledger.stored_bits)

    logger.info(
        f"Memory trace over {len(sizes)} layers: erased {ledger.erased_bits_total} bits, "
        f"peak {ledger.peak_stored_bits} stored"
    )
    return ledger
