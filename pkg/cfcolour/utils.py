from contextlib import contextmanager
from enum import Enum
from typing import Any, Dict, Iterator
import time

from pydantic import BaseModel

from cfcolour.models import SubsetColouring, VertexColouring


def encode_token(token: Any) -> str:
    """Flatten a colour token (int, tuple, QCode, enum) into a canonical string."""
    if isinstance(token, Enum):
        return str(token.value)
    if isinstance(token, BaseModel):
        return "|".join(encode_token(value) for value in token.model_dump().values())
    if isinstance(token, (tuple, list)):
        return "(" + ",".join(encode_token(part) for part in token) + ")"
    return str(token)


def encode_colouring(colouring) -> Dict[str, Any]:
    """JSON-friendly form of a vertex or subset colouring."""
    if isinstance(colouring, VertexColouring):
        return {"kind": "vertex", "colours": list(colouring.colours)}
    if isinstance(colouring, SubsetColouring):
        return {
            "kind": "subset",
            "t": colouring.t,
            "tokens": {",".join(map(str, s)): encode_token(tok) for s, tok in sorted(colouring.assignment.items())},
        }
    raise TypeError(f"cannot encode {type(colouring).__name__}")


def decode_colouring(payload: Dict[str, Any], n: int):
    """Inverse of encode_colouring; subset tokens stay as their canonical strings."""
    if payload.get("kind") == "vertex":
        return VertexColouring(colours=tuple(payload["colours"]))
    assignment = {tuple(int(v) for v in key.split(",")): token for key, token in payload["tokens"].items()}
    return SubsetColouring(t=payload["t"], n=n, assignment=assignment)


@contextmanager
def stopwatch() -> Iterator[Dict[str, float]]:
    """Yields a dict whose "millis" entry is filled in on exit."""
    elapsed = {"millis": 0.0}
    start = time.perf_counter()
    try:
        yield elapsed
    finally:
        elapsed["millis"] = (time.perf_counter() - start) * 1000
