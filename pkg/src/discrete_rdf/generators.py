"""Weight and sequence generators, spec strings and plain-text files.

Spec grammar::

    power:lambda=<f>                               w(k) = k**lambda
    const:c=<f>                                    w(k) = c
    random:dist=loguniform,lo=<f>,hi=<f>,seed=<u64>
    file:<path>                                    one value per line

Files hold one decimal per line; a leading ``w`` header line, blank lines and
``#`` comments are skipped.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import BadSpec
from .weights import Weight, check_exponent, factor_compose
from .operators import _maximal

__all__ = [
    "parse_spec",
    "read_values",
    "write_values",
    "power_weight",
    "const_weight",
    "loguniform_weight",
    "power_family",
    "random_a1_weight",
    "random_ap_weight",
]


def power_weight(n: int, lam: float) -> Weight:
    k = np.arange(1, int(n) + 1, dtype=float)
    return Weight(k ** float(lam), label=f"power:lambda={lam:g}", power=float(lam))


def const_weight(n: int, c: float = 1.0) -> Weight:
    return Weight(np.full(int(n), float(c)), label=f"const:c={c:g}", power=0.0)


def power_family(n: int, p: float, count: int = 7, margin: float = 0.2) -> list[Weight]:
    """Power weights ``k^lam`` with ``lam`` evenly spread over ``[-1+margin, p-1-margin]``."""
    p = check_exponent(p)
    lo, hi = -1.0 + margin, p - 1.0 - margin
    if count < 1 or hi < lo:
        raise BadSpec(f"no power exponents fit in (-1, {p - 1:g}) with margin {margin:g}")
    return [power_weight(n, lam) for lam in np.linspace(lo, hi, int(count))]


def loguniform_weight(n: int, lo: float, hi: float, seed: int) -> Weight:
    if not 0 < lo <= hi:
        raise BadSpec(f"loguniform needs 0 < lo <= hi, got lo={lo:g}, hi={hi:g}")
    rng = np.random.default_rng(int(seed))
    vals = np.exp(rng.uniform(np.log(lo), np.log(hi), int(n)))
    return Weight(vals, label=f"random:dist=loguniform,lo={lo:g},hi={hi:g},seed={seed}")


def read_values(path) -> np.ndarray:
    out = []
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not out and line.lower() in ("w", "f", "h", "v"):
            continue
        try:
            out.append(float(line))
        except ValueError:
            raise BadSpec(f"{path}:{lineno}: not a number: {line!r}") from None
    if not out:
        raise BadSpec(f"{path}: no values")
    return np.array(out)


def write_values(path, values, header="w"):
    lines = [header] + [repr(float(x)) for x in np.asarray(values, dtype=float)]
    Path(path).write_text("\n".join(lines) + "\n")


def _kv(body: str) -> dict:
    out = {}
    for part in filter(None, body.split(",")):
        if "=" not in part:
            raise BadSpec(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def parse_spec(spec: str, n: int | None = None) -> Weight:
    """Build a weight (or sequence) from a spec string.

    ``n`` is required for every kind except ``file:``; a file is truncated
    to ``n`` entries when ``n`` is given.
    """
    if ":" not in spec:
        raise BadSpec(f"spec needs a kind prefix, got {spec!r}")
    kind, body = spec.split(":", 1)
    if kind == "file":
        vals = read_values(body)
        if n is not None:
            if vals.size < n:
                raise BadSpec(f"{body} has {vals.size} values, need {n}")
            vals = vals[:n]
        return Weight(vals, label=spec)
    if n is None or int(n) < 1:
        raise BadSpec(f"spec {spec!r} needs a length n >= 1")
    args = _kv(body)
    try:
        if kind == "power":
            return power_weight(n, float(args["lambda"]))
        if kind == "const":
            return const_weight(n, float(args.get("c", 1.0)))
        if kind == "random":
            if args.get("dist", "loguniform") != "loguniform":
                raise BadSpec(f"unsupported distribution {args['dist']!r}")
            return loguniform_weight(n, float(args["lo"]), float(args["hi"]),
                                     int(args.get("seed", 0)))
    except KeyError as exc:
        raise BadSpec(f"spec {spec!r} is missing {exc.args[0]!r}") from None
    except ValueError as exc:
        if isinstance(exc, BadSpec):
            raise
        raise BadSpec(f"bad number in spec {spec!r}: {exc}") from None
    raise BadSpec(f"unknown spec kind {kind!r}")


# Random weights with controlled class membership, used by property suites.

def random_a1_weight(n: int, rng: np.random.Generator) -> Weight:
    """A positive weight with a moderate truncated ``A_1`` constant.

    Either a decreasing power ``k^lam`` (``-1 < lam <= 0``) or a power
    ``(Mf)^delta``, ``0 < delta < 1``, of a maximal function.
    """
    if rng.random() < 0.5:
        lam = rng.uniform(-0.9, 0.0)
        return power_weight(n, lam)
    f = np.exp(rng.uniform(np.log(1e-3), 0.0, n))
    delta = rng.uniform(0.1, 0.9)
    return Weight(_maximal(f) ** delta, label=f"(Mf)^{delta:.3f}")


def random_ap_weight(n: int, p: float, rng: np.random.Generator) -> Weight:
    """A positive weight drawn from one of three ``A_p`` families.

    Power weights ``k^lam`` with ``-1 < lam < p-1``, reverse factorizations
    ``w1 w2^{1-p}`` of two ``A_1`` weights, and log-uniform perturbations of
    a power weight.
    """
    p = check_exponent(p)
    kind = rng.integers(3)
    if kind == 0:
        lam = rng.uniform(-0.9, min(p - 1.0, 3.0) - 0.1)
        return power_weight(n, lam)
    if kind == 1:
        w = factor_compose(random_a1_weight(n, rng), random_a1_weight(n, rng), p)
        return Weight(w.values, label="factorized")
    lam = rng.uniform(-0.5, min(p - 1.0, 2.0) * 0.5)
    noise = np.exp(rng.uniform(-0.5, 0.5, n))
    return Weight(np.arange(1, n + 1) ** lam * noise, label=f"noisy power {lam:.3f}")
