"""Partial curve actions and orbit certification for the twist-generator
constructions.

Labels model the 2g+1 Humphries curves (a beta/gamma chain plus two alpha
curves), the gamma curves excluded to split the chain into sub-chains F_i,
the three extra lantern curves x1, x2, x3, and (for the three-generator
construction) the auxiliary alpha_l curve.  Generator actions are partial
injective maps recording only the curve images forced by the construction;
images landing on unlabeled curves are simply absent from the map.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InvalidDecomposition,
    MissingLanternData,
    PlusOneUnsupported,
    RangeError,
    UnsupportedK,
)
from .genus import GenusDecomposition


@dataclass(frozen=True, order=True)
class CurveLabel:
    """kind in {alpha, beta, gamma, xgamma, lantern}; xgamma marks an
    excluded gamma curve (still a Humphries curve)."""

    kind: str
    index: str

    def __str__(self) -> str:
        return f"{self.kind}:{self.index}"

    @classmethod
    def parse(cls, text: str) -> "CurveLabel":
        kind, _, index = text.partition(":")
        if kind not in ("alpha", "beta", "gamma", "xgamma", "lantern") or not index:
            raise InvalidDecomposition(f"bad curve label {text!r}")
        return cls(kind, index)


def beta(i: int) -> CurveLabel:
    return CurveLabel("beta", str(i))


def gamma(i: int) -> CurveLabel:
    return CurveLabel("gamma", str(i))


def xgamma(i: int) -> CurveLabel:
    return CurveLabel("xgamma", str(i))


def alpha(i: int) -> CurveLabel:
    return CurveLabel("alpha", str(i))


ALPHA_L = CurveLabel("alpha", "l")
X1 = CurveLabel("lantern", "x1")
X2 = CurveLabel("lantern", "x2")
X3 = CurveLabel("lantern", "x3")
# The lantern curves gamma1, gamma2, alpha1, alpha2 alias their Humphries
# identities; only x1, x2, x3 are extra labels.


@dataclass(frozen=True)
class GeneratorAction:
    """A named partial injective curve map; name may be a power word like
    "g^3" recording facts about that power."""

    name: str
    order: int
    map: tuple[tuple[CurveLabel, CurveLabel], ...]

    def __post_init__(self):
        sources = [s for s, _ in self.map]
        targets = [t for _, t in self.map]
        if len(set(sources)) != len(sources):
            raise InvalidDecomposition(f"{self.name}: map is not a function")
        if len(set(targets)) != len(targets):
            raise InvalidDecomposition(f"{self.name}: map is not injective")
        for length in self.cycle_lengths():
            if self.order % length != 0:
                raise InvalidDecomposition(
                    f"{self.name}: labeled {length}-cycle does not divide "
                    f"order {self.order}"
                )

    @classmethod
    def of(cls, name, order, mapping: dict) -> "GeneratorAction":
        return cls(name, order, tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[CurveLabel, CurveLabel]:
        return dict(self.map)

    def cycle_lengths(self) -> list[int]:
        m = self.as_dict()
        seen = set()
        out = []
        for start in m:
            if start in seen:
                continue
            # walk forward; a cycle exists only if we return to start
            path = [start]
            seen.add(start)
            cur = m[start]
            while cur in m and cur != start:
                if cur in seen:
                    break
                seen.add(cur)
                path.append(cur)
                cur = m[cur]
            if cur == start:
                out.append(len(path))
        return out


def humphries_label_set(g: int, excluded: set[int]) -> set[CurveLabel]:
    """The 2g+1 Humphries labels: beta 1..g, gamma 1..g-1 (excluded ones
    carry the xgamma kind), alpha 1 and 2."""
    out = {beta(i) for i in range(1, g + 1)}
    out |= {
        xgamma(j) if j in excluded else gamma(j) for j in range(1, g)
    }
    out |= {alpha(1), alpha(2)}
    return out


@dataclass(frozen=True)
class ChainLayout:
    """The F_i sub-chains: per chain, global beta and gamma index ranges,
    plus the excluded gamma indices separating consecutive chains."""

    k: int
    genus: int
    beta_counts: tuple[int, ...]
    plus_one: bool

    @property
    def starts(self) -> list[int]:
        s, out = 1, []
        for m in self.beta_counts:
            out.append(s)
            s += m
        return out

    def betas(self, i: int) -> list[int]:
        s = self.starts[i]
        return list(range(s, s + self.beta_counts[i]))

    def gammas(self, i: int) -> list[int]:
        s = self.starts[i]
        return list(range(s, s + self.beta_counts[i] - 1))

    def excluded(self) -> list[int]:
        return [
            self.starts[i] + self.beta_counts[i] - 1
            for i in range(len(self.beta_counts) - 1)
        ]

def chain_layout(k: int, dec: GenusDecomposition) -> ChainLayout:
    if dec.k != k:
        raise InvalidDecomposition(f"decomposition is for k={dec.k}, not {k}")
    if dec.plus_one:
        counts = (k,) * dec.a
    else:
        counts = (k,) * dec.a + (k - 1,) * dec.b
    return ChainLayout(k, dec.genus(), counts, dec.plus_one)


def _f_map(k: int, dec: GenusDecomposition, with_alpha_l: bool) -> dict:
    layout = chain_layout(k, dec)
    m: dict = {}
    for i, count in enumerate(layout.beta_counts):
        bs = layout.betas(i)
        for j in range(len(bs) - 1):
            m[beta(bs[j])] = beta(bs[j + 1])
        if count == k:
            # a genus-k piece has exactly k evenly spaced handle curves, so
            # the rotation closes the labeled beta cycle
            m[beta(bs[-1])] = beta(bs[0])
        gs = layout.gammas(i)
        for j in range(len(gs) - 1):
            m[gamma(gs[j])] = gamma(gs[j + 1])
        # the final gamma image is an unlabeled curve: absent from the map
    if dec.a >= 1:
        m[alpha(1)] = alpha(2)
    else:
        m[alpha(1)] = gamma(1)
    if with_alpha_l:
        m[ALPHA_L] = alpha(1)
    return m


def build_action_four(k: int, dec: GenusDecomposition) -> list[GeneratorAction]:
    """The f, g, h partial actions of the four-generator construction."""
    if k < 5:
        raise RangeError(f"four-generator construction needs k >= 5, got {k}")
    layout = chain_layout(k, dec)
    g_total = dec.genus()
    nchains = len(layout.beta_counts)
    excl = layout.excluded()

    f_map = _f_map(k, dec, with_alpha_l=False)

    g_map: dict = {X3: gamma(1), X1: gamma(2)}
    if dec.plus_one:
        g_map[gamma(2)] = beta(g_total)
    else:
        g_map[gamma(2)] = alpha(2)
    for i in range(1, nchains):  # chains are 0-based; G_i for i = 2..a+b
        prev_bs = layout.betas(i - 1)
        g_map[beta(prev_bs[-2])] = xgamma(excl[i - 1])
        g_map[xgamma(excl[i - 1])] = beta(layout.betas(i)[1])

    h_map: dict = {gamma(1): X2, gamma(2): alpha(2), alpha(2): beta(4)}
    if dec.plus_one:
        h_map[beta(4)] = gamma(g_total - 1)
    for i in range(1, nchains):  # H_i for i = 2..a+b
        bs = layout.betas(i)
        h_map[beta(bs[0])] = gamma(layout.gammas(i)[1])

    return [
        GeneratorAction.of("f", k, f_map),
        GeneratorAction.of("g", k, g_map),
        GeneratorAction.of("h", k, h_map),
    ]


def build_action_three(k: int, dec: GenusDecomposition) -> list[GeneratorAction]:
    """The f, g partial actions of the three-generator construction, with
    the needed power facts (g^3, or g^2 for k = 6) as extra action tables."""
    if k == 5 or k < 5:
        raise UnsupportedK(
            f"three-generator construction needs k = 6 or k >= 7, got {k}"
        )
    if k == 7 and dec.a < 1:
        raise UnsupportedK(
            "k = 7 needs a decomposition with a leading genus-7 piece"
        )
    if dec.plus_one:
        raise PlusOneUnsupported(
            "the three-generator construction excludes the ak+1 form"
        )
    layout = chain_layout(k, dec)
    nchains = len(layout.beta_counts)
    excl = layout.excluded()

    f_map = _f_map(k, dec, with_alpha_l=True)

    actions: list[GeneratorAction] = []
    if k >= 7:
        g_map = {X3: gamma(1), X1: gamma(2), gamma(4): beta(6)}
        power_name, power_exp = "g^3", 3
        power_map = {X2: gamma(3), alpha(2): gamma(4)}
    else:  # k == 6: the lantern has three-fold symmetry under the rotation
        g_map = {X1: beta(4), beta(4): gamma(2)}
        power_name, power_exp = "g^2", 2
        power_map = {
            X3: gamma(1),
            X1: gamma(2),
            gamma(1): X2,
            gamma(2): alpha(2),
            X2: X3,
            alpha(2): X1,
        }
    # G_2 starts at alpha_l; later G_i start at the last gamma of F_{i-1}
    for i in range(1, nchains):
        first = ALPHA_L if i == 1 else gamma(layout.gammas(i - 1)[-1])
        g_map[first] = xgamma(excl[i - 1])
        g_map[xgamma(excl[i - 1])] = gamma(layout.gammas(i)[0])
        g_map[gamma(layout.gammas(i)[0])] = beta(layout.betas(i)[2])

    actions.append(GeneratorAction.of("f", k, f_map))
    actions.append(GeneratorAction.of("g", k, g_map))
    actions.append(GeneratorAction.of(power_name, k, power_map))
    return actions


def actions_to_json(k: int, dec: GenusDecomposition, actions) -> dict:
    """Reviewable file format: {k, genus, decomposition, generators:
    [{name, order, map: [[label, label]]}]}."""
    return {
        "k": k,
        "genus": dec.genus(),
        "decomposition": {"a": dec.a, "b": dec.b, "plus_one": dec.plus_one},
        "generators": [
            {
                "name": act.name,
                "order": act.order,
                "map": [[str(s), str(t)] for s, t in act.map],
            }
            for act in actions
        ],
    }


def actions_from_json(data: dict):
    """Inverse of actions_to_json; returns (k, dec, actions)."""
    d = data["decomposition"]
    dec = GenusDecomposition(data["k"], d["a"], d["b"], plus_one=d["plus_one"])
    if dec.genus() != data["genus"]:
        raise InvalidDecomposition(
            f"genus {data['genus']} does not match decomposition {dec}"
        )
    actions = [
        GeneratorAction.of(
            g["name"],
            g["order"],
            {CurveLabel.parse(s): CurveLabel.parse(t) for s, t in g["map"]},
        )
        for g in data["generators"]
    ]
    return data["k"], dec, actions


def load_shipped(name: str) -> dict:
    """Load one of the packaged worked-instance action tables."""
    import json
    from importlib import resources

    with resources.files("torsiongen").joinpath(f"data/{name}").open() as fh:
        return json.load(fh)


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def certify_single_orbit(
    actions: list[GeneratorAction], labels: set[CurveLabel]
) -> tuple[bool, list[list[CurveLabel]]]:
    """Union-find over all action edges; true iff every label in `labels`
    lands in one component.  Orbit membership is symmetric under inverses,
    so undirected closure suffices."""
    uf = _UnionFind()
    for lb in labels:
        uf.find(lb)
    for act in actions:
        for s, t in act.map:
            uf.union(s, t)
    components: dict = {}
    for lb in labels:
        components.setdefault(uf.find(lb), []).append(lb)
    comps = sorted((sorted(c) for c in components.values()), key=len, reverse=True)
    return len(comps) == 1, comps


def _role_maps(actions: list[GeneratorAction]):
    """The (g-role, h-role) partial maps satisfying the twist lemma, derived
    from the action tables: (g, h) for the four-generator variant, (g,
    f^-2 g^3) for three generators, (g^2, g^4) for k = 6."""
    by_name = {a.name: a for a in actions}
    f_map = by_name["f"].as_dict()
    if "h" in by_name:
        return by_name["g"].as_dict(), by_name["h"].as_dict(), "four"
    f_inv = {t: s for s, t in f_map.items()}
    if "g^3" in by_name:
        g3 = by_name["g^3"].as_dict()
        h_role = {}
        for s, t in g3.items():
            u = f_inv.get(t)
            u = f_inv.get(u) if u is not None else None
            if u is not None:
                h_role[s] = u
        return by_name["g"].as_dict(), h_role, "three"
    if "g^2" in by_name:
        g2 = by_name["g^2"].as_dict()
        g4 = {
            s: g2[t] for s, t in g2.items() if t in g2
        }
        return g2, g4, "three-k6"
    raise MissingLanternData("no h, g^3, or g^2 action present")


def verify_lantern_hypotheses(actions: list[GeneratorAction]) -> bool:
    """Check the three twist-lemma conditions: f(gamma1) = gamma2,
    g-role(x3, x1) = (gamma1, gamma2), h-role(x2, alpha2) = (gamma1,
    gamma2) (the four-generator h satisfies the inverse form)."""
    by_name = {a.name: a for a in actions}
    if "f" not in by_name or "g" not in by_name:
        raise MissingLanternData("actions must include f and g")
    f_map = by_name["f"].as_dict()
    g_role, h_role, _variant = _role_maps(actions)
    lantern_labels = {X1, X2, X3, gamma(1), gamma(2), alpha(2)}
    touched = set()
    for m in (f_map, g_role, h_role):
        touched |= set(m) | set(m.values())
    if not lantern_labels & touched:
        raise MissingLanternData("no lantern curve appears in the actions")
    if f_map.get(gamma(1)) != gamma(2):
        return False
    if not (g_role.get(X3) == gamma(1) and g_role.get(X1) == gamma(2)):
        return False
    direct = h_role.get(X2) == gamma(1) and h_role.get(alpha(2)) == gamma(2)
    inverse = h_role.get(gamma(1)) == X2 and h_role.get(gamma(2)) == alpha(2)
    return direct or inverse
