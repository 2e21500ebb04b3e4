"""
Regression corpora: reproducible function files plus a manifest of oracle values.

Up to n = 3 the manifest holds exhaustive brute-force LDAs and exact code
distances, up to n = 5 algebraic immunity from degree-bounded elimination,
and beyond that no oracle fields at all.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, Union

import numpy as np

from annihil import ai_vectorial, brute_force_lda, lda_product
from codes import code_from_preimage, min_distance
from errors import CapabilityError
from field import MAX_DEGREE
from function_files import save_function
from funcrep import VectorialFunction

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_N = 3
ELIMINATION_MAX_N = 5
# exhaustive corpora are only enumerated up to this many functions
MAX_EXHAUSTIVE = 1 << 16


def corpus_size(n: int, m: int) -> int:
    """Number of (n,m)-functions, 2^(m 2^n)"""
    return 1 << (m << n)


def _tables(n: int, m: int, count: int, seed: int, exhaustive: bool) -> Iterator[np.ndarray]:
    size = 1 << n
    if exhaustive:
        mask = (1 << m) - 1
        for index in range(corpus_size(n, m)):
            yield np.array([(index >> (m * x)) & mask for x in range(size)], dtype=np.int64)
        return
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield rng.integers(0, 1 << m, size=size, dtype=np.int64)


def oracle_values(F: VectorialFunction) -> Dict[str, Any]:
    """Expected values for one function, from the strongest oracle its size allows"""
    n = F.n
    if n > ELIMINATION_MAX_N:
        return {}
    ai = ai_vectorial(F)
    values: Dict[str, Any] = {
        "ai": ai.value,
        "ai_method": "flagged-degenerate" if ai.degenerate else "elimination",
        "lda_product": lda_product(F),
        "per_value": {format(b, "x"): lda for b, lda in ai.per_value.items()},
    }
    if n <= BRUTE_FORCE_MAX_N:
        per_value = {}
        for b, points in F.preimages().items():
            if points.size < (1 << n):
                per_value[format(b, "x")] = brute_force_lda(points, n)
        values["per_value_brute_force"] = per_value
        if per_value:
            values["ai_brute_force"] = min(per_value.values())
        distances = {}
        for b in F.preimages():
            profile = min_distance(code_from_preimage(F, b))
            distances[format(b, "x")] = profile.min_distance if profile.is_exact() else None
        values["distances"] = distances
    return values


def generate_corpus(n: int, m: int, count: int, seed: int, out_dir: Union[str, Path],
                    store=None) -> Path:
    """
    Write count function files and manifest.json into out_dir.

    When count covers every (n,m)-function the corpus is exhaustive and the
    seed is ignored. With a ResultStore every member is also persisted.

    Returns:
        Path to the manifest
    """
    if not 1 <= n <= MAX_DEGREE or m < 1:
        raise CapabilityError(f"Corpus parameters out of range: n={n}, m={m}")
    if count < 1:
        raise ValueError(f"Corpus size must be positive, got {count}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    exhaustive = (m << n) <= MAX_EXHAUSTIVE.bit_length() - 1 and count >= corpus_size(n, m)
    total = corpus_size(n, m) if exhaustive else count
    if n > ELIMINATION_MAX_N:
        logger.warning(f"n={n} is beyond the oracle range; the manifest omits oracle fields")
    corpus_name = f"n{n}m{m}-{'all' if exhaustive else f'seed{seed}-{count}'}"
    logger.info(f"Generating corpus {corpus_name} in {out_dir}")

    entries = []
    width = len(str(total - 1))
    for index, table in enumerate(_tables(n, m, count, seed, exhaustive)):
        F = VectorialFunction(n, m, table)
        name = f"f{index:0{width}d}.json"
        save_function(F, out_dir / name)
        oracle = oracle_values(F)
        entries.append({"file": name, "digest": F.digest(), **oracle})
        if store is not None:
            store.add_corpus_entry(corpus_name, F, oracle)

    manifest = {
        "corpus": corpus_name,
        "n": n,
        "m": m,
        "count": len(entries),
        "seed": None if exhaustive else seed,
        "exhaustive": exhaustive,
        "oracle": _oracle_name(n),
        "functions": entries,
    }
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Wrote {len(entries)} functions and {manifest_path}")
    return manifest_path


def _oracle_name(n: int) -> Optional[str]:
    if n <= BRUTE_FORCE_MAX_N:
        return "brute-force"
    if n <= ELIMINATION_MAX_N:
        return "elimination"
    return None
