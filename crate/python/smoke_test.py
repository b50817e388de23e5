#!/usr/bin/env python3
"""Build the fssrank_py extension, import it, and drive every binding once.

Run from anywhere: python3 python/smoke_test.py
"""

import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def build_extension() -> Path:
    subprocess.run(
        ["cargo", "build", "-p", "fssrank-py"],
        cwd=ROOT,
        check=True,
    )
    for name in ("libfssrank_py.so", "libfssrank_py.dylib", "fssrank_py.dll"):
        built = ROOT / "target" / "debug" / name
        if built.exists():
            return built
    sys.exit("extension library not found under target/debug")


def import_extension(built: Path, staging: Path):
    suffix = ".pyd" if built.suffix == ".dll" else ".so"
    shutil.copy2(built, staging / f"fssrank_py{suffix}")
    sys.path.insert(0, str(staging))
    import fssrank_py

    return fssrank_py


def main() -> None:
    checks = 0

    def check(condition: bool, label: str) -> None:
        nonlocal checks
        if not condition:
            sys.exit(f"FAIL: {label}")
        checks += 1

    with tempfile.TemporaryDirectory() as tmp:
        staging = Path(tmp) / "site"
        staging.mkdir()
        fr = import_extension(build_extension(), staging)

        # Synthetic corpus, validated and loaded back.
        corpus_dir = Path(tmp) / "corpus"
        fr.synth_corpus(str(corpus_dir), seed=7, ground_truth=True)
        check((corpus_dir / "professors.csv").exists(), "synth writes professors.csv")
        check((corpus_dir / "ground_truth.csv").exists(), "synth writes ground_truth.csv")

        log = fr.validate_dir(str(corpus_dir))
        check("0 errors" in log, "validation log reports 0 errors")
        check("3 professors excluded (tenure)" in log, "tenure filter reported")

        corpus = fr.Corpus.load(str(corpus_dir))
        check(corpus.professor_count > 0, "professors loaded")
        check(corpus.publication_count > 0, "publications loaded")
        check(corpus.authorship_count >= corpus.publication_count, "bylines loaded")

        scores = corpus.professor_scores("fss")
        check(len(scores) == corpus.professor_count, "fss defined for every professor")
        check(all(math.isfinite(v) and v >= 0 for _, v in scores), "fss scores finite")
        mncs = corpus.professor_scores("mncs")
        check(0 < len(mncs) <= len(scores), "mncs defined only for publishing professors")

        entities = corpus.entity_scores("fss", "sds")
        check(len(entities) > 0, "eligible units exist")
        check(all(staff >= 2 for _, staff, _, _ in entities), "staff threshold respected")

        summary = corpus.compare_methods("fss", "sds")
        check(summary["population"] == len(entities), "comparison covers every unit")
        check(-1.0 <= summary["spearman_rho"] <= 1.0, "rho in range")
        check(len(summary["rows"]) == len(entities), "per-entity rows present")

        # Credit shares.
        extramural = fr.credit_weights(6)
        expected = [0.30, 0.15, 0.05, 0.05, 0.15, 0.30]
        check(
            all(abs(w - e) < 1e-12 for w, e in zip(extramural, expected)),
            "six-author extramural split",
        )
        check(fr.credit_weights(4, "alphabetical") == [0.25] * 4, "uniform split")
        check(
            abs(sum(fr.credit_weights(9, intramural=True)) - 1.0) < 1e-12,
            "intramural weights sum to 1",
        )
        check(
            fr.classify_byline(["UA", None, "UA"]) == "intramural"
            and fr.classify_byline(["UA", None, "UB"]) == "extramural",
            "byline classification",
        )

        # Ranking primitives.
        check(fr.percentile(16, 25) == 37.5, "percentile spot value")
        check(fr.quartile(13, 50) == 2, "quartile spot value")
        ranked = fr.rank_scores([("a", 3.0), ("b", 1.0), ("c", 3.0)])
        check(
            [(r[0], r[2]) for r in ranked] == [("a", 1), ("c", 1), ("b", 3)],
            "competition ranking with ties",
        )

        # Even population: an odd reversal would leave its middle fixed.
        up = [("e%d" % i, float(10 - i)) for i in range(4)]
        down = [("e%d" % i, float(i)) for i in range(4)]
        check(fr.spearman_rho(up, up) == 1.0, "identity correlation")
        check(fr.spearman_rho(up, down) == -1.0, "reversal correlation")
        flipped = fr.compare_rankings(up, down)
        check(flipped["pct_shifting"] == 100.0, "full reversal shifts everyone")

        try:
            fr.credit_weights(0)
        except ValueError:
            checks += 1
        else:
            sys.exit("FAIL: zero-author byline accepted")

    print(f"smoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()
