"""The timed cosine-vs-fuzzy comparison, both from Python and through the CLI."""

import datetime as dt
import json
import tempfile
from pathlib import Path

from doccluster import SynthSpec, generate
from doccluster.cli import main
from doccluster.report import elapsed_between, format_clock, strip_timing

# the historical clock readings, parsed as printed
print("cosine run:", elapsed_between("9:07:09 PM", "9: 25:59 PM"), "s")
print("fuzzy run: ", elapsed_between("9:30:17 PM", "9:45:7 PM"), "s")
print("formatted:", format_clock(dt.time(21, 7, 9)))

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    gen = generate(SynthSpec(overlap=0.3, seed=7), tmp / "corpus")
    argv = ["compare", "--input", str(gen.docs_dir), "--k", "5", "--seed", "7",
            "--labels", str(gen.labels_path)]

    print()
    main(argv + ["--out", str(tmp / "a")])
    main(argv + ["--out", str(tmp / "b"), "--threads", "4"])

    a = json.loads((tmp / "a" / "report.json").read_text())
    b = json.loads((tmp / "b" / "report.json").read_text())
    print("\nreports agree outside timing:", strip_timing(a) == strip_timing(b))
    print("manifest head:")
    print("\n".join((tmp / "a" / "cosine" / "manifest.tsv").read_text().splitlines()[:3]))
