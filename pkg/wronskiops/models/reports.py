"""
Report schemas. Integers are written to JSON as decimal strings so that
arbitrary-precision values survive any JSON reader.
"""
import enum
from typing import Annotated, Any, Dict, List, Optional

from pydantic import BaseModel, BeforeValidator, PlainSerializer


def _int_from_text(value: Any) -> Any:
    if isinstance(value, str):
        return int(value)
    return value


BigInt = Annotated[int, BeforeValidator(_int_from_text), PlainSerializer(str, return_type=str, when_used='json')]


class SuiteStatus(str, enum.Enum):
    PENDING = "pending"
    RUNNING = "running"
    PASSED = "passed"
    FAILED = "failed"


class RootReport(BaseModel):
    exact_count: Optional[BigInt] = None
    expanded_zero: Optional[bool] = None
    descartes_positive: Optional[BigInt] = None
    descartes_negative: Optional[BigInt] = None
    a_priori_sparse: Optional[BigInt] = None
    a_priori_dense: Optional[BigInt] = None
    a_priori_refined: Optional[BigInt] = None
    reduced_terms: Optional[BigInt] = None
    upsilon_size: Optional[BigInt] = None
    certified_upsilon: Optional[BigInt] = None
    certified_main3: Optional[BigInt] = None
    certified_sum: Optional[BigInt] = None
    pit_blackbox: Optional[bool] = None
    blackbox_queries: Optional[BigInt] = None
    blackbox_witness: Optional[BigInt] = None
    pit_whitebox: Optional[bool] = None
    certificate_verified: Optional[bool] = None
    # stage -> why it was not applicable
    notes: Dict[str, str] = {}
    timings_ms: Dict[str, float] = {}

    def bounds(self) -> Dict[str, int]:
        """Every applicable upper bound on the distinct real root count."""
        names = ('a_priori_sparse', 'a_priori_dense', 'a_priori_refined',
                 'certified_upsilon', 'certified_main3', 'certified_sum')
        return {name: getattr(self, name) for name in names if getattr(self, name) is not None}


class CaseResult(BaseModel):
    index: int
    seed: BigInt
    passed: bool
    detail: str = ""


class SuiteReport(BaseModel):
    suite: str
    status: SuiteStatus = SuiteStatus.PENDING
    seed: BigInt
    cases: int = 0
    passed: int = 0
    failures: List[CaseResult] = []
    elapsed_ms: float = 0.0


class Report(BaseModel):
    command: str
    instance: Optional[str] = None
    root: Optional[RootReport] = None
    values: Dict[str, str] = {}
    suite: Optional[SuiteReport] = None
    timings_ms: Dict[str, float] = {}
