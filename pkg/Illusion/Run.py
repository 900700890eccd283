from typing import Optional

from System.SystemDef import CSystem
from System.Trace import CTrace

from .Report import CIllusionReport
from .Verify import verify_illusion
from .Witness import CWitness


class CIllusionRun:
    """everything an orchestrator produces: both systems, both traces and the realized witness"""
    def __init__(self, sec_system: CSystem, sec_trace: CTrace, pri_system: CSystem, pri_trace: CTrace, witness: CWitness, m: int = 1):
        self.sec_system = sec_system
        self.sec_trace = sec_trace
        self.pri_system = pri_system
        self.pri_trace = pri_trace
        self.witness = witness
        self.m = m
        self.report: Optional[CIllusionReport] = None

    def verify(self, eps: float) -> CIllusionReport:
        self.report = verify_illusion(self.sec_system, self.sec_trace, self.pri_system, self.pri_trace, self.m, self.witness, eps)
        return self.report

    @property
    def secondary_steps(self) -> int:
        return self.sec_trace.horizon

    @property
    def primary_steps(self) -> int:
        return self.pri_trace.horizon
