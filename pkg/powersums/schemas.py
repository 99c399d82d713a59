"""
Pydantic models for every JSON document the commands emit.

Documents are built from domain objects, validated here, and dumped back;
a document that does not survive the round trip is never printed.
"""
import json
from typing import Any, Dict, List, Optional, Type, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .exceptions import PowerSumsError


class SchemaMismatchError(PowerSumsError):
    """An emitted document does not match, or does not round-trip through, its schema."""
    pass


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class RationalSchema(StrictModel):
    num: str
    den: str

    @field_validator("num", "den")
    @classmethod
    def integer_string(cls, v: str) -> str:
        int(v)
        return v

    @field_validator("den")
    @classmethod
    def positive_denominator(cls, v: str) -> str:
        if int(v) <= 0:
            raise ValueError("denominator must be positive")
        return v


class PolynomialSchema(StrictModel):
    variable: str
    coeffs: List[Union["PolynomialSchema", RationalSchema]]


PolynomialSchema.model_rebuild()

Coefficient = Union[PolynomialSchema, RationalSchema]


class CheckSchema(StrictModel):
    name: str
    params: Dict[str, Any]
    passed: bool = Field(alias="pass")
    counterexample: Optional[Dict[str, Any]]


class ReportSchema(StrictModel):
    checks: List[CheckSchema]
    all_pass: bool

    @model_validator(mode="after")
    def all_pass_matches_checks(self) -> "ReportSchema":
        if self.all_pass != all(check.passed for check in self.checks):
            raise ValueError("all_pass disagrees with the individual checks")
        return self


class ExpansionSchema(StrictModel):
    kind: str
    m: int
    power: int
    x: Optional[str]
    variable: str
    definition: PolynomialSchema
    coeffs: List[Coefficient]
    constants: Optional[Dict[str, Coefficient]]


class ClosedFormSchema(StrictModel):
    kind: str
    folds: int
    power: int
    x: Optional[str]
    value: Coefficient
    correction: Optional[Coefficient]


class StructureFitSchema(StrictModel):
    fold: int
    power: int
    case: str
    r: int
    m: int
    nu: PolynomialSchema
    F: Coefficient
    G: Coefficient
    f_prefactor: Coefficient
    g_prefactor: Coefficient
    g_degree_bound: int


class ParityFormSchema(StrictModel):
    r: int
    power: int
    x: str
    even: Coefficient
    odd: Coefficient


class AlternatingValueSchema(StrictModel):
    r: int
    power: int
    x: str
    n: int
    closed_form: str
    direct: str
    agree: bool


class SequenceSchema(StrictModel):
    kind: str
    max: int
    numbers: Optional[List[RationalSchema]]
    polys: Optional[List[PolynomialSchema]]
    rows: Optional[List[List[RationalSchema]]]


class EvalSchema(StrictModel):
    power: int
    r: int
    n: str
    route: str
    closed_form: str
    closed_form_ms: float
    naive: Optional[str]
    naive_ms: Optional[float]
    agree: Optional[bool]


def dump_document(schema: Type[BaseModel], document: Dict[str, Any]) -> str:
    """
    Validate ``document`` against ``schema`` and return it as JSON text.

    Raises:
        SchemaMismatchError: validation fails or the dump differs from the input
    """
    try:
        model = schema.model_validate(document)
    except ValidationError as e:
        raise SchemaMismatchError(f"{schema.__name__}: {e}") from e
    dumped = model.model_dump(mode="json", by_alias=True)
    if dumped != json.loads(json.dumps(document)):
        raise SchemaMismatchError(f"{schema.__name__}: document does not round-trip")
    return json.dumps(dumped, indent=2, sort_keys=True)
