"""Independent brute-force oracles for the algorithmic kernels.

Every function here is deliberately naive -- exhaustive enumeration or
direct recursion -- and shares no code with the implementations it checks.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache


def lcs_exhaustive(a: tuple[str, ...], b: tuple[str, ...]) -> int:
    """Longest common subsequence by enumerating subsequences of the shorter
    sequence (exponential; keep inputs short)."""
    if len(a) > len(b):
        a, b = b, a
    best = 0
    for mask in range(1 << len(a)):
        sub = [a[i] for i in range(len(a)) if mask >> i & 1]
        if len(sub) <= best:
            continue
        it = iter(b)
        if all(tok in it for tok in sub):
            best = len(sub)
    return best


def levenshtein_recursive(a: tuple[str, ...], b: tuple[str, ...]) -> int:
    """Plain recursion over edit scripts, memoized."""

    @lru_cache(maxsize=None)
    def go(i: int, j: int) -> int:
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        sub = go(i + 1, j + 1) + (0 if a[i] == b[j] else 1)
        return min(go(i + 1, j) + 1, go(i, j + 1) + 1, sub)

    return go(0, 0)


def forest_edit_distance(f1: tuple, f2: tuple) -> int:
    """Naive recursion over forests of Ast nodes: delete, insert, or match
    rightmost roots.  Explores every edit script (memoized on identity)."""
    memo: dict = {}

    def size(forest: tuple) -> int:
        return sum(node.size() for node in forest)

    def go(x: tuple, y: tuple) -> int:
        key = (tuple(id(n) for n in x), tuple(id(n) for n in y))
        if key in memo:
            return memo[key]
        if not x:
            result = size(y)
        elif not y:
            result = size(x)
        else:
            v, w = x[-1], y[-1]
            delete = go(x[:-1] + v.children, y) + 1
            insert = go(x, y[:-1] + w.children) + 1
            match = (
                go(v.children, w.children)
                + go(x[:-1], y[:-1])
                + (0 if v.signature() == w.signature() else 1)
            )
            result = min(delete, insert, match)
        memo[key] = result
        return result

    return go(f1, f2)


def tree_edit_exhaustive(t1, t2) -> int:
    return forest_edit_distance((t1,), (t2,))


def ged_exhaustive(g1, g2) -> int:
    """Minimum over every injective vertex mapping of its induced edit cost."""
    v1, v2 = list(g1.vertices), list(g2.vertices)
    pos1 = {v: i for i, v in enumerate(v1)}
    pos2 = {v: i for i, v in enumerate(v2)}
    e1 = {(pos1[a], pos1[b]): kind for a, b, kind in g1.edges}
    e2 = {(pos2[a], pos2[b]): kind for a, b, kind in g2.edges}
    n1, n2 = len(v1), len(v2)
    best = n1 + n2 + len(e1) + len(e2)
    for k in range(min(n1, n2) + 1):
        for subset in itertools.combinations(range(n1), k):
            for image in itertools.permutations(range(n2), k):
                mapping = dict(zip(subset, image))
                cost = (n1 - k) + (n2 - k)
                cost += sum(1 for u, v in mapping.items() if v1[u] != v2[v])
                if cost >= best:
                    continue
                inverse = {v: u for u, v in mapping.items()}
                for (u, u2), kind in e1.items():
                    v, v2_ = mapping.get(u), mapping.get(u2)
                    if v is None or v2_ is None or (v, v2_) not in e2:
                        cost += 1
                    elif e2[(v, v2_)] != kind:
                        cost += 1
                for (v, v2_) in e2:
                    u, u2 = inverse.get(v), inverse.get(v2_)
                    if u is None or u2 is None or (u, u2) not in e1:
                        cost += 1
                best = min(best, cost)
    return best


def chrf_naive(reference: str, candidate: str, max_k: int, beta: float) -> float:
    """Direct recount of character k-gram precision/recall and the F-score."""
    ref = "".join(reference.split())
    hyp = "".join(candidate.split())
    precisions, recalls = [], []
    for k in range(1, max_k + 1):
        ref_grams = Counter(ref[i : i + k] for i in range(len(ref) - k + 1))
        hyp_grams = Counter(hyp[i : i + k] for i in range(len(hyp) - k + 1))
        if not ref_grams and not hyp_grams:
            continue
        overlap = 0
        for gram, count in hyp_grams.items():
            overlap += min(count, ref_grams.get(gram, 0))
        precisions.append(overlap / max(1, sum(hyp_grams.values())) if hyp_grams else 0.0)
        recalls.append(overlap / max(1, sum(ref_grams.values())) if ref_grams else 0.0)
    if not precisions:
        return 100.0
    p = sum(precisions) / len(precisions)
    r = sum(recalls) / len(recalls)
    if p == 0 and r == 0:
        return 0.0
    b2 = beta * beta
    return 100.0 * (1 + b2) * p * r / (r + b2 * p)


def meteor_exhaustive(hyp: list[str], ref: list[str], config) -> float:
    """Score from the best alignment found by enumerating *all* match subsets
    (exponential; inputs must stay small), ranked by covered words, then
    chunks, then total start distance, then the match tuple."""
    from codescore.metrics.porter import stem

    pairs = {}
    for i, h in enumerate(hyp):
        for j, r in enumerate(ref):
            if h == r:
                pairs[(i, j)] = 0
            elif config.enable_stem and stem(h) == stem(r):
                pairs[(i, j)] = 1

    all_pairs = sorted(pairs)
    complete: list[tuple] = []

    def extend(idx: int, chosen: tuple, used_h: frozenset, used_r: frozenset):
        if idx == len(all_pairs):
            complete.append(chosen)
            return
        i, j = all_pairs[idx]
        if i not in used_h and j not in used_r:
            extend(
                idx + 1,
                chosen + ((i, j),),
                used_h | {i},
                used_r | {j},
            )
        extend(idx + 1, chosen, used_h, used_r)

    extend(0, (), frozenset(), frozenset())

    def chunks(matches: tuple) -> int:
        count = 0
        prev = None
        for i, j in sorted(matches):
            if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
                count += 1
            prev = (i, j)
        return count

    best = min(
        complete,
        key=lambda m: (
            -len(m),
            chunks(m),
            sum(abs(i - j) for i, j in m),
            tuple(sorted(m)),
        ),
    )
    matches = len(best)
    if matches == 0 or not hyp or not ref:
        return 0.0
    weights = {0: config.weight_exact, 1: config.weight_stem}
    mass = sum(weights[pairs[(i, j)]] for i, j in best)
    precision = mass / len(hyp)
    recall = mass / len(ref)
    if precision == 0 and recall == 0:
        return 0.0
    fmean = precision * recall / (
        config.alpha * precision + (1 - config.alpha) * recall
    )
    penalty = config.gamma * (chunks(best) / matches) ** config.beta
    return 100.0 * fmean * (1.0 - penalty)
