"""Line-oriented tensor files.

    # comment
    tensor <order> <dim> <symmetric|general>
    <i_1> ... <i_k> <value>

Indices are 1-based. In symmetric mode any ordering of an index may be
listed; repeated orbits must agree. General mode is symmetrized by orbit
averaging when loaded.
"""
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from tensorcert.core.exceptions.tensor_format_error import TensorFormatError
from tensorcert.core.exceptions.tensor_shape_error import TensorShapeError
from tensorcert.core.multi_index import MultiIndex, canonical, to_external, to_internal
from tensorcert.core.sym_tensor import SymTensor
from util.logging_mixin import LoggingMixin

MODES = ("symmetric", "general")


@dataclass(frozen=True)
class TensorFile:
    tensor: SymTensor
    mode: str
    symmetrized: bool
    comments: Tuple[str, ...] = ()


class TensorFileParser(LoggingMixin):

    def parse(self, text: str, symmetrize: bool = True) -> TensorFile:
        header = None
        comments: List[str] = []
        entries: Dict[MultiIndex, float] = {}
        for line_number, raw in enumerate(text.splitlines(), start=1):
            line, _, comment = raw.partition("#")
            if comment.strip():
                comments.append(comment.strip())
            tokens = line.split()
            if not tokens:
                continue
            if header is None:
                header = self._parse_header(tokens, line_number)
                continue
            order, dim, mode = header
            key, value = self._parse_entry(tokens, order, dim, line_number)
            if mode == "symmetric":
                key = canonical(key)
            if key in entries and entries[key] != value:
                raise TensorFormatError(f"conflicting duplicate for {to_external(key)}: "
                                        f"{entries[key]!r} vs {value!r}", line_number)
            entries[key] = value
        if header is None:
            raise TensorFormatError("missing header 'tensor <order> <dim> <symmetric|general>'")

        order, dim, mode = header
        tensor = SymTensor(order, dim, entries, symmetric=(mode == "symmetric"))
        symmetrized = False
        if mode == "general" and symmetrize:
            self.logger.warning("General-mode tensor symmetrized by orbit averaging")
            tensor, symmetrized = tensor.symmetrize(), True
        return TensorFile(tensor, mode, symmetrized, tuple(comments))

    @staticmethod
    def _parse_header(tokens: Sequence[str], line_number: int) -> Tuple[int, int, str]:
        if len(tokens) != 4 or tokens[0] != "tensor" or tokens[3] not in MODES:
            raise TensorFormatError("expected header 'tensor <order> <dim> <symmetric|general>'", line_number)
        try:
            order, dim = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise TensorFormatError("order and dimension must be integers", line_number)
        if order < 2 or dim < 1:
            raise TensorFormatError(f"need order >= 2 and dimension >= 1, got {order} and {dim}", line_number)
        return order, dim, tokens[3]

    @staticmethod
    def _parse_entry(tokens: Sequence[str], order: int, dim: int, line_number: int) -> Tuple[MultiIndex, float]:
        if len(tokens) != order + 1:
            raise TensorFormatError(f"expected {order} indices and a value, got {len(tokens)} fields", line_number)
        try:
            indices = [int(token) for token in tokens[:order]]
            value = float(tokens[order])
        except ValueError:
            raise TensorFormatError(f"malformed entry {' '.join(tokens)!r}", line_number)
        if not math.isfinite(value):
            raise TensorFormatError(f"entry value {tokens[order]} is not finite", line_number)
        try:
            return to_internal(indices, order, dim), value
        except TensorShapeError as e:
            raise TensorFormatError(e.message, line_number)


def parse_tensor(text: str, symmetrize: bool = True) -> SymTensor:
    """Tensor in ``text``; with ``symmetrize=False`` general files keep their raw entries."""
    return TensorFileParser().parse(text, symmetrize).tensor


def emit_tensor(a: SymTensor, comments: Sequence[str] = ()) -> str:
    """Text form of ``a``; values use the shortest repr that parses back exactly.

    General tensors parse back unchanged only with ``parse_tensor(text, symmetrize=False)``.
    """
    mode = "symmetric" if a.symmetric else "general"
    lines = [f"# {comment}" for comment in comments]
    lines.append(f"tensor {a.order} {a.dim} {mode}")
    for key, value in a.items():
        lines.append(" ".join(str(i) for i in key) + f" {value!r}")
    return "\n".join(lines) + "\n"
