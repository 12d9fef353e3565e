"""Write the canonical curve pairs as JSON curve files.

Each pair ``<name>`` becomes ``<name>_c.json`` and ``<name>_d.json`` in the
output directory, ready for ``devpatch solve <name>_c.json <name>_d.json``.

Usage:
    python -m evaluation.generate_samples [--out-dir sample_data]
"""

import argparse
import sys
from pathlib import Path

# Ensure src/ is importable when running from repo root
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cli.storage.file_storage import FileStorage  # noqa: E402
from devpatch import sample_pairs  # noqa: E402

PAIRS = {
    "cylinder": sample_pairs.cylinder_pair,
    "cone": sample_pairs.cone_pair,
    "mirrored": sample_pairs.mirrored_pair,
    "saddle": sample_pairs.saddle_pair,
    "planar": sample_pairs.planar_pair,
    "quarter_cylinder": sample_pairs.quarter_cylinder_pair,
    "spline": sample_pairs.spline_pair,
}


def generate(out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    storage = FileStorage(base_dir=out_dir)
    for name, build in PAIRS.items():
        c, d = build()
        storage.write_text(out_dir / f"{name}_c.json", FileStorage.curve_to_json(c))
        storage.write_text(out_dir / f"{name}_d.json", FileStorage.curve_to_json(d))
        print(f"  {name:<18} degree {c.degree}/{d.degree}  {len(c.points)}+{len(d.points)} control points")
    print(f"\nWrote {2 * len(PAIRS)} curve files to {out_dir}")


def main():
    parser = argparse.ArgumentParser(description="Write canonical curve pairs as JSON")
    parser.add_argument("--out-dir", default="sample_data", help="Output directory")
    args = parser.parse_args()
    generate(Path(args.out_dir))


if __name__ == "__main__":
    main()
