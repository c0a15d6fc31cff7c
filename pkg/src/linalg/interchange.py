"""Matrix interchange format: {"dim": d, "re": [[...]], "im": [[...]]}."""

import json
from pathlib import Path
from typing import Any

import numpy as np

from src.linalg.operators import Operator


def operator_from_dict(data: dict[str, Any]) -> Operator:
    """Parse the row-major interchange object; ``im`` may be omitted."""
    try:
        dim = int(data["dim"])
        re = np.asarray(data["re"], dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"Malformed matrix object: {e}") from e
    im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ValueError(
            f"Matrix object declares dim={dim} but re/im have shapes {re.shape}/{im.shape}"
        )
    return Operator(re + 1j * im)


def operator_to_dict(A: Operator) -> dict[str, Any]:
    return {
        "dim": A.dim,
        "re": A.entries.real.tolist(),
        "im": A.entries.imag.tolist(),
    }


def load_operator(path: str | Path) -> Operator:
    with open(path, encoding="utf-8") as f:
        return operator_from_dict(json.load(f))


def save_operator(A: Operator, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(operator_to_dict(A), f)
