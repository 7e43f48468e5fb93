"""
Pydantic models for reports, run configuration and structured output.
"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, computed_field, model_validator


Quadruple = Tuple[int, int, int, int]


class ConditionReport(BaseModel):
    """Outcome of the exchange-condition grid check."""
    function: str = Field(..., description="Name of the edge function checked")
    holds: bool = Field(..., description="f(x,a)+f(y,b) >= f(y,a)+f(x,b) on the whole grid")
    strict_holds: bool = Field(..., description="Strict inequality wherever x > y and a > b")
    witness: Optional[Quadruple] = Field(None, description="Smallest (x, y, a, b) violating the inequality")
    witness_margin: Optional[float] = Field(None, description="f(x,a)+f(y,b)-f(y,a)-f(x,b) at the witness")
    strict_witness: Optional[Quadruple] = Field(None, description="Smallest (x, y, a, b) violating strictness")
    grid_max: int = Field(..., ge=2, description="Largest degree on the grid")

    @model_validator(mode="after")
    def _witness_present(self):
        if not self.holds and self.witness is None:
            raise ValueError("a failed check must carry a witness")
        if not self.strict_holds and self.strict_witness is None:
            raise ValueError("a failed strict check must carry a witness")
        return self


class TreeRecord(BaseModel):
    """A constructed or loaded tree with its index value."""
    label: str = Field(..., description="What the tree is, e.g. 'greedy' or 'alternating greedy 2/5'")
    n: int = Field(..., ge=1)
    edges: List[Tuple[int, int]]
    degrees: List[int] = Field(..., description="Degree of each vertex by label")
    form: str = Field(..., description="Canonical AHU code")
    index_name: str
    value: float


class ExtremalForm(BaseModel):
    """One unlabeled tree attaining an extreme value, with a labeled representative."""
    form: str = Field(..., description="Canonical AHU code")
    value: float = Field(..., description="Index value")
    edges: List[Tuple[int, int]] = Field(..., description="Edges of the first labeled representative")


class AltGreedyValue(BaseModel):
    """Value of one alternating greedy tree and whether it is extremal."""
    form: str = Field(..., description="Canonical AHU code")
    value: float = Field(..., description="Index value")
    attains_min: bool
    attains_max: bool


class ExtremalReport(BaseModel):
    """Global extremes of an index over every tree with a degree sequence."""
    sequence: List[int] = Field(..., description="Degree sequence, non-increasing")
    index_name: str
    min_value: float
    max_value: float
    argmin_forms: List[ExtremalForm]
    argmax_forms: List[ExtremalForm]
    labeled_count: int = Field(..., description="Labeled trees enumerated")
    expected_labeled_count: int = Field(..., description="(n-2)! / prod (d_i - 1)!")
    unlabeled_count: int = Field(..., description="Distinct canonical forms seen")
    greedy_form: str
    greedy_value: float
    greedy_attains_min: bool
    greedy_attains_max: bool
    alt_greedy_attains_min: bool
    alt_greedy_attains_max: bool
    alt_greedy_values: List[AltGreedyValue]
    orientation: Optional[str] = Field(
        None, description="'min' if the greedy tree should minimise, 'max' if it should maximise"
    )
    tolerance: float = Field(..., ge=0, description="Slack used when comparing index values")

    @model_validator(mode="after")
    def _ordered(self):
        if self.min_value > self.max_value:
            raise ValueError("min_value exceeds max_value")
        return self

    @computed_field
    @property
    def verified(self) -> Optional[bool]:
        """Whether both constructions attain the extremes the orientation predicts."""
        if self.orientation == "min":
            return self.greedy_attains_min and self.alt_greedy_attains_max
        if self.orientation == "max":
            return self.greedy_attains_max and self.alt_greedy_attains_min
        return None

    @computed_field
    @property
    def alt_greedy_uniform(self) -> bool:
        values = [item.value for item in self.alt_greedy_values]
        return not values or max(values) - min(values) <= self.tolerance


class SweepSummary(BaseModel):
    """Aggregate of a sweep over every degree sequence up to n_max."""
    n_max: int
    index_name: str
    sequences: int = Field(..., description="Number of degree sequences checked")
    greedy_failures: List[List[int]] = Field(default=[], description="Sequences where the greedy tree misses its extreme")
    alt_greedy_failures: List[List[int]] = Field(default=[], description="Sequences where every alternating greedy tree misses its extreme")
    alt_greedy_nonuniform: List[List[int]] = Field(default=[], description="Sequences whose alternating greedy trees differ in value")

    @computed_field
    @property
    def failed(self) -> bool:
        return bool(self.greedy_failures or self.alt_greedy_failures)


class Command(str, Enum):
    GREEDY = "greedy"
    ALTGREEDY = "altgreedy"
    INDEX = "index"
    VERIFY = "verify"
    SWEEP = "sweep"
    CONDITION = "condition"
    SWITCH_SCAN = "switch-scan"


class OutputFormat(str, Enum):
    EDGES = "edges"
    DOT = "dot"
    TEXT = "text"
    STRUCTURED = "structured"


class RunConfig(BaseModel):
    """Validated command-line invocation."""
    command: Command
    sequence: Optional[str] = Field(None, description="Degree sequence text as given")
    internal: bool = Field(False, description="Sequence lists internal degrees only")
    tree_file: Optional[str] = Field(None, description="Edge-list file for index / switch-scan")
    index_name: str = "sombor"
    output_format: OutputFormat = OutputFormat.TEXT
    grid_max: int = Field(50, ge=2)
    cap: int = Field(100_000_000, ge=1)
    jobs: int = Field(1, ge=1)
    n_max: int = Field(10, ge=2)
    all_variants: bool = False
    maximize: bool = False

    @model_validator(mode="after")
    def _needs_input(self):
        if self.command in (Command.CONDITION, Command.SWEEP):
            return self
        if self.command == Command.INDEX and self.tree_file is None:
            raise ValueError("index needs --tree FILE")
        if self.command == Command.SWITCH_SCAN and self.tree_file is not None:
            return self
        if self.command != Command.INDEX and self.sequence is None:
            raise ValueError(f"{self.command.value} needs a degree sequence")
        return self
