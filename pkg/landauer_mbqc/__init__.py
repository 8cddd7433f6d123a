"""
Landauer-MBQC: measurement-based quantum computation simulator and heat
accounting harness.

The package tracks the classical byproduct record of cluster-state MBQC,
checks the no-signaling and one-time-pad structure of the measured
ensemble, and converts memory erasure into Landauer / Sagawa-Ueda heat.
"""

__version__ = "1.0.0"
