"""Seeded generators for the four synthetic experiment families.

Each generator is a pure function of its parameters and an RngStream, returns
a SequencePair carrying its ground-truth direction, and never touches global
state, so trials parallelize freely. Real-valued families drop transients
first and binarize afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import InputError
from .rng import RngStream
from .seqcore import (
    Direction,
    RealSeries,
    SequencePair,
    SymbolSequence,
    binarize_equiwidth,
    binarize_nonzero,
)

FAMILIES = ("delay_bitflip", "ar1", "skew_tent", "sparse")

# fixed model constants
AR1_A = 0.8
AR1_B = 0.8
AR1_NOISE = 0.01
TENT_B_DRIVER = 0.35
TENT_B_RESPONSE = 0.76
SPARSE_N = 2000
SPARSE_ALPHA = 0.8
SPARSE_BETA = 0.08
SPARSE_GAMMA = 0.75
SPARSE_NOISE_SD = 0.1  # scale of the N(0, 0.1) noise, read as a standard deviation

TRIGGER_PATTERN = (1, 1, 0, 1)


@dataclass(frozen=True)
class TrialSpec:
    """One sweep battery: a family, the swept parameter values, and sizes."""

    family: str
    param_name: str
    values: tuple[float, ...]
    length: int
    drop: int
    trials: int
    seed: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}")
        if self.trials < 1:
            raise InputError("trials must be >= 1")
        if self.length <= self.drop:
            raise InputError("length must exceed the number of dropped transients")

    def to_config(self) -> str:
        """Flat key=value block, one entry per line."""
        values = ",".join(repr(float(v)) for v in self.values)
        return (
            f"family={self.family}\n"
            f"param={self.param_name}\n"
            f"values={values}\n"
            f"length={self.length}\n"
            f"drop={self.drop}\n"
            f"trials={self.trials}\n"
            f"seed={self.seed}\n"
        )

    @classmethod
    def from_config(cls, text: str) -> "TrialSpec":
        fields: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InputError(f"config line {lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            fields[key.strip()] = value.strip()
        missing = {"family", "param", "values", "length", "drop", "trials", "seed"} - set(fields)
        if missing:
            raise InputError(f"config missing keys: {', '.join(sorted(missing))}")
        try:
            values = tuple(float(v) for v in fields["values"].split(",") if v.strip())
            return cls(
                family=fields["family"],
                param_name=fields["param"],
                values=values,
                length=int(fields["length"]),
                drop=int(fields["drop"]),
                trials=int(fields["trials"]),
                seed=int(fields["seed"]),
            )
        except ValueError as exc:
            raise InputError(f"bad config value: {exc}") from exc

    def with_trials(self, trials: int) -> "TrialSpec":
        return replace(self, trials=trials)


def delayed_flip_indicator(x_symbols: tuple[int, ...], delay_k: int) -> tuple[int, ...]:
    """y_i = 1 iff the trigger pattern ends at position i - delay_k (1-based)."""
    n = len(x_symbols)
    plen = len(TRIGGER_PATTERN)
    y = [0] * n
    for i in range(n):  # 0-based end position of the would-be pattern: i - delay_k
        end = i - delay_k
        if end - plen + 1 >= 0 and tuple(x_symbols[end - plen + 1 : end + 1]) == TRIGGER_PATTERN:
            y[i] = 1
    return tuple(y)


def gen_delayed_bitflip(length: int, delay_k: int, rng: RngStream) -> SequencePair:
    """Fair random bits X; Y flags trigger-pattern occurrences after a delay."""
    if length < 8:
        raise InputError("delayed bit-flip needs length >= 8")
    if not 0 <= delay_k <= 6:
        raise InputError("delay must lie in [0, 6]")
    x_symbols = tuple(rng.bit() for _ in range(length))
    y_symbols = delayed_flip_indicator(x_symbols, delay_k)
    return SequencePair(
        SymbolSequence(x_symbols, 2),
        SymbolSequence(y_symbols, 2),
        Direction.X_CAUSES_Y,
    )


def gen_ar1(
    phi: float,
    length: int,
    drop: int,
    rng: RngStream,
    noise_nu: float = AR1_NOISE,
) -> SequencePair:
    """Unidirectionally coupled AR(1) pair: the autonomous Y drives X.

    Per step the Y innovation is drawn before the X innovation. Zero initial
    conditions; the first ``drop`` samples are discarded before equi-width
    binarization. Ground truth is y_causes_x, or independent when phi == 0.
    """
    if not 0 <= phi < 1:
        raise InputError("phi must lie in [0, 1)")
    if length <= drop:
        raise InputError("length must exceed drop")
    xs = [0.0] * length
    ys = [0.0] * length
    xprev = 0.0
    yprev = 0.0
    for t in range(length):
        eps_y = noise_nu * rng.normal()
        eps_x = noise_nu * rng.normal()
        ycur = AR1_B * yprev + eps_y
        xcur = AR1_A * xprev + phi * yprev + eps_x
        ys[t] = ycur
        xs[t] = xcur
        xprev, yprev = xcur, ycur
    bx = binarize_equiwidth(RealSeries(tuple(xs[drop:])))
    by = binarize_equiwidth(RealSeries(tuple(ys[drop:])))
    truth = Direction.INDEPENDENT if phi == 0 else Direction.Y_CAUSES_X
    return SequencePair(bx, by, truth)


def skew_tent(x: float, b: float) -> float:
    """Piecewise-linear chaotic map on [0, 1) with breakpoint b."""
    if x < b:
        return x / b
    return (1.0 - x) / (1.0 - b)


def gen_skew_tent(eta: float, length: int, drop: int, rng: RngStream) -> SequencePair:
    """Driver-response pair of skew-tent maps with concurrent coupling.

    D_t = T(D_{t-1}, 0.35); R_t = (1 - eta) * T(R_{t-1}, 0.76) + eta * D_t.
    Initial conditions are uniform on (0, 1), the driver drawn first. Ground
    truth is x_causes_y (driver causes response), or independent at eta == 0.
    """
    if not 0 <= eta <= 0.9:
        raise InputError("eta must lie in [0, 0.9]")
    if length <= drop:
        raise InputError("length must exceed drop")
    d = rng.uniform()
    r = rng.uniform()
    ds = [0.0] * length
    rs = [0.0] * length
    for t in range(length):
        d = skew_tent(d, TENT_B_DRIVER)
        r = (1.0 - eta) * skew_tent(r, TENT_B_RESPONSE) + eta * d
        if not (0.0 <= d <= 1.0 and 0.0 <= r <= 1.0):
            raise AssertionError("skew-tent orbit left [0, 1]")
        ds[t] = d
        rs[t] = r
    bd = binarize_equiwidth(RealSeries(tuple(ds[drop:])))
    br = binarize_equiwidth(RealSeries(tuple(rs[drop:])))
    truth = Direction.INDEPENDENT if eta == 0 else Direction.X_CAUSES_Y
    return SequencePair(bd, br, truth)


def gen_sparse(k: int, rng: RngStream, n: int = SPARSE_N) -> SequencePair:
    """Sparse coupled processes observed at k random instants and their successors.

    Latent AR recursions run over all t; the first process is observed only on
    a random k-subset of instants, the second only on their immediate
    successors (within range). Both observations binarize via the nonzero
    indicator. Ground truth is x_causes_y.
    """
    if not 1 <= k <= 50:
        raise InputError("sparsity k must lie in [1, 50]")
    t1 = set(rng.sample_without_replacement(n, k))  # 0-based instants
    t2 = {t + 1 for t in t1 if t + 1 < n}
    z1_latent = 0.0
    z2_latent = 0.0
    z1_prev_obs = 0.0
    z1 = [0.0] * n
    z2 = [0.0] * n
    for t in range(n):
        eps1 = SPARSE_NOISE_SD * rng.normal()
        eps2 = SPARSE_NOISE_SD * rng.normal()
        z1_latent = SPARSE_ALPHA * z1_latent + eps1
        z2_latent = SPARSE_BETA * z2_latent + SPARSE_GAMMA * z1_prev_obs + eps2
        z1[t] = z1_latent if t in t1 else 0.0
        z2[t] = z2_latent if t in t2 else 0.0
        z1_prev_obs = z1[t]
    bx = binarize_nonzero(RealSeries(tuple(z1)))
    by = binarize_nonzero(RealSeries(tuple(z2)))
    return SequencePair(bx, by, Direction.X_CAUSES_Y)


def generate_trial(family: str, value: float, length: int, drop: int, rng: RngStream) -> SequencePair:
    """Dispatch one trial of any family; ``value`` is the swept parameter."""
    if family == "delay_bitflip":
        return gen_delayed_bitflip(length, int(value), rng)
    if family == "ar1":
        return gen_ar1(value, length, drop, rng)
    if family == "skew_tent":
        return gen_skew_tent(value, length, drop, rng)
    if family == "sparse":
        return gen_sparse(int(value), rng, n=length)
    raise InputError(f"unknown family {family!r}")
