"""Orthogonal designs and their dispersion matrices

A design of K symbols over T slots and M columns is kept in linear
dispersion form, G(x) = sum_t (A_t x_t + B_t x_t*). Column r of G is what
relay r emits during its own forwarding phase, so the decoders only ever
need the per-column vectors returned by `relay_columns`.

The shipped designs are written as codeword templates. Each entry is
`0` or a signed symbol, `x3*` meaning the conjugate of the third symbol.

alamouti (T=2, M=2, K=2)::

    x1    x2
   -x2*   x1*

c34, rate 3/4 complex design for three columns (T=4, M=3, K=3)::

    x1    x2    x3
   -x2*   x1*   0
   -x3*   0     x1*
    0    -x3*   x2*

c44, full-rate real design for four columns (T=4, M=4, K=4)::

    x1    x2    x3    x4
   -x2    x1   -x4    x3
   -x3    x4    x1   -x2
   -x4   -x3    x2    x1
"""
from dataclasses import dataclass
import logging
import re
from typing import Optional, Sequence, Tuple

import numpy as np

from stssc.core.base import Singleton
from stssc.core.errors import ConfigurationError, ConsistencyError, UsageError

__all__ = [
    "DESIGN_NAMES",
    "DesignCatalog",
    "OrthogonalDesign",
    "OrthogonalityReport",
    "build_design",
    "codeword",
    "format_design",
    "relay_columns",
    "verify_orthogonality",
]

LOGGER = logging.getLogger(__name__)

TOLERANCE = 1e-12

TEMPLATES = {
    "alamouti": (
        ("x1", "x2"),
        ("-x2*", "x1*"),
    ),
    "c34": (
        ("x1", "x2", "x3"),
        ("-x2*", "x1*", "0"),
        ("-x3*", "0", "x1*"),
        ("0", "-x3*", "x2*"),
    ),
    "c44": (
        ("x1", "x2", "x3", "x4"),
        ("-x2", "x1", "-x4", "x3"),
        ("-x3", "x4", "x1", "-x2"),
        ("-x4", "-x3", "x2", "x1"),
    ),
}

REAL_ONLY = {"c44"}

DESIGN_NAMES = tuple(TEMPLATES)

_ENTRY = re.compile(r"^(?P<sign>[+-]?)x(?P<index>\d+)(?P<conj>\*?)$")


@dataclass(frozen=True, eq=False)
class OrthogonalDesign:
    """A space-time code in linear dispersion form

    `A` and `B` have shape (K, T, M). `d[t]` is
    trace(A_t^H A_t + B_t^H B_t) and `column_energy[r, t]` is the share of
    it carried by column r."""
    # pylint:disable=invalid-name,too-many-instance-attributes
    name: str
    T: int
    M: int
    K: int
    A: np.ndarray
    B: np.ndarray
    d: np.ndarray
    column_energy: np.ndarray
    real_only: bool
    template: Tuple[Tuple[str, ...], ...] = ()

    @property
    def rate(self) -> float:
        """Symbols per slot"""
        return self.K / self.T


@dataclass(frozen=True)
class OrthogonalityReport:
    """Outcome of `verify_orthogonality`"""
    name: str
    trials: int
    max_deviation: float

    @property
    def passed(self) -> bool:
        """True when the deviation is within tolerance"""
        return self.max_deviation < TOLERANCE


def _parse_entry(entry: str) -> Optional[Tuple[int, float, bool]]:
    """Parse one template entry

    :return: (symbol index, sign, conjugated) or None for a zero entry
    """
    entry = entry.replace(" ", "")
    if entry == "0":
        return None
    match = _ENTRY.match(entry)
    if match is None:
        raise ConfigurationError("bad design entry %r" % entry)
    sign = -1.0 if match.group("sign") == "-" else 1.0
    return int(match.group("index")) - 1, sign, bool(match.group("conj"))


def _from_template(name: str, template, real_only: bool) -> OrthogonalDesign:
    """Turn a codeword template into dispersion matrices"""
    # pylint:disable=invalid-name
    T = len(template)
    M = len(template[0])
    parsed = [[_parse_entry(entry) for entry in row] for row in template]
    K = 1 + max(cell[0] for row in parsed for cell in row if cell is not None)

    A = np.zeros((K, T, M), dtype=complex)
    B = np.zeros((K, T, M), dtype=complex)
    for row, cells in enumerate(parsed):
        if len(cells) != M:
            raise ConfigurationError("ragged template for %s" % name)
        for col, cell in enumerate(cells):
            if cell is None:
                continue
            index, sign, conjugated = cell
            target = B if conjugated else A
            target[index, row, col] += sign

    column_energy = (np.sum(np.abs(A) ** 2, axis=1)
                     + np.sum(np.abs(B) ** 2, axis=1)).T
    d = np.real(np.einsum("ktm,ktm->k", A.conj(), A)
                + np.einsum("ktm,ktm->k", B.conj(), B))
    for array in (A, B, d, column_energy):
        array.setflags(write=False)

    design = OrthogonalDesign(
        name=name, T=T, M=M, K=K, A=A, B=B, d=d,
        column_energy=column_energy, real_only=real_only,
        template=tuple(tuple(row) for row in template))
    _check_structure(design)
    return design


def _check_structure(design: OrthogonalDesign):
    """Check the invariants that do not need random trials"""
    if design.K > design.T:
        raise ConsistencyError("%s has rate above one" % design.name)
    if np.any(design.d <= 0):
        raise ConsistencyError("%s has a symbol with no energy" % design.name)
    for r in range(design.M):
        a, b = relay_columns(design, r)
        # symbol decoupling within one column
        cross = a.conj() @ a.T + b @ b.conj().T
        off_diagonal = cross - np.diag(np.diag(cross))
        # symbol/conjugate decoupling within one column
        mixed = a.conj() @ b.T
        if np.max(np.abs(off_diagonal)) > TOLERANCE or \
                np.max(np.abs(mixed)) > TOLERANCE:
            raise ConsistencyError(
                "%s column %d does not decouple symbols" % (design.name, r))


class DesignCatalog(metaclass=Singleton):
    """Built designs, created once and shared"""
    # pylint:disable=too-few-public-methods

    designs = {}

    def __getitem__(self, name: str) -> OrthogonalDesign:
        if name not in TEMPLATES:
            raise ConfigurationError(
                "unknown design %r, expected one of %s" % (
                    name, ", ".join(DESIGN_NAMES)))
        if name not in self.designs:
            LOGGER.debug("building design %s", name)
            self.designs[name] = _from_template(
                name, TEMPLATES[name], name in REAL_ONLY)
        return self.designs[name]


def build_design(name: str) -> OrthogonalDesign:
    """Get one of the shipped designs

    :param name: one of `DESIGN_NAMES`
    """
    return DesignCatalog()[name]


def _check_symbols(design: OrthogonalDesign, x) -> np.ndarray:
    x = np.asarray(x)
    if x.shape[-1:] != (design.K,):
        raise UsageError(
            "%s takes %d symbols, got shape %s" % (
                design.name, design.K, x.shape))
    if design.real_only and np.iscomplexobj(x) and np.any(np.imag(x) != 0):
        raise UsageError("%s only accepts real symbols" % design.name)
    return x.astype(complex)


def codeword(design: OrthogonalDesign, x: Sequence[complex]) -> np.ndarray:
    """Build G(x) = sum_t (A_t x_t + B_t x_t*)

    :param design: the space-time code
    :param x: K symbols
    :return: T x M complex matrix
    """
    x = _check_symbols(design, x)
    return (np.einsum("ktm,k->tm", design.A, x)
            + np.einsum("ktm,k->tm", design.B, x.conj()))


def relay_columns(design: OrthogonalDesign, r: int) -> Tuple[np.ndarray, np.ndarray]:
    """Dispersion columns used by relay `r`

    :param design: the space-time code
    :param r: 0-based column index
    :return: (a, b), each K x T, with a[t] = A_t[:, r] and b[t] = B_t[:, r]
    """
    if not 0 <= r < design.M:
        raise UsageError(
            "relay index %d out of range for %s with %d columns" % (
                r, design.name, design.M))
    return design.A[:, :, r], design.B[:, :, r]


def verify_orthogonality(
        design: OrthogonalDesign,
        trials: int = 1000,
        seed: int = 0,
        complex_symbols: Optional[bool] = None) -> OrthogonalityReport:
    """Check G(x)^H G(x) = |x|^2 I on random symbol vectors

    :param design: the space-time code
    :param trials: number of random vectors
    :param seed: rng seed, same seed gives the same report
    :param complex_symbols: draw complex vectors, defaults to the design's domain
    """
    if trials < 1:
        raise UsageError("trials must be at least 1")
    if complex_symbols is None:
        complex_symbols = not design.real_only
    if complex_symbols and design.real_only:
        raise UsageError(
            "%s is a real design, complex trials are not valid" % design.name)

    rng = np.random.default_rng(seed)
    x = rng.standard_normal((trials, design.K))
    if complex_symbols:
        x = x + 1j * rng.standard_normal((trials, design.K))
    identity = np.eye(design.M)
    worst = 0.0
    for row in x:
        g = codeword(design, row)
        energy = float(np.sum(np.abs(row) ** 2))
        deviation = np.linalg.norm(g.conj().T @ g - energy * identity) / energy
        worst = max(worst, float(deviation))
    return OrthogonalityReport(
        name=design.name, trials=trials, max_deviation=worst)


def _format_value(value: complex) -> str:
    parts = []
    for part, unit in ((value.real, ""), (value.imag, "j")):
        if part == 0:
            continue
        magnitude = abs(part)
        if magnitude == 1:
            text = unit or "1"
        else:
            text = "%r%s" % (magnitude, unit)
        parts.append(("-" if part < 0 else "+") + text)
    if not parts:
        return "0"
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


def format_design(design: OrthogonalDesign) -> str:
    """Exact text listing of a design

    :param design: the space-time code
    :return: template followed by every A_t and B_t
    """
    lines = ["%s: T=%d M=%d K=%d rate=%s real_only=%s" % (
        design.name, design.T, design.M, design.K,
        "%d/%d" % (design.K, design.T), design.real_only)]
    width = max(len(entry) for row in design.template for entry in row)
    lines.append("codeword:")
    for row in design.template:
        lines.append("  " + "  ".join(entry.rjust(width) for entry in row))
    for t in range(design.K):
        for label, matrix in (("A", design.A[t]), ("B", design.B[t])):
            lines.append("%s_%d:" % (label, t + 1))
            cells = [[_format_value(complex(v)) for v in row] for row in matrix]
            cell_width = max(len(c) for row in cells for c in row)
            for row in cells:
                lines.append("  " + "  ".join(c.rjust(cell_width) for c in row))
        lines.append("d_%d = %g" % (t + 1, design.d[t]))
    return "\n".join(lines)
