"""File storage for curve inputs, branch files, meshes and reports."""

import csv
import json
import logging
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from devpatch.curves import NurbsCurve
from devpatch.errors import BranchFormatError, CurveFormatError
from devpatch.models.entities import ReparamBranch

from ..config import get_settings
from ..models.schemas import CurveFileModel

logger = logging.getLogger(__name__)

BRANCH_HEADER = ["t", "T", "dT"]


class FileStorage:
    """Reads and writes the files the devpatch commands exchange."""

    def __init__(self, base_dir: Optional[Path] = None):
        """
        Initialize file storage.

        Args:
            base_dir: Directory for branch files. Uses settings if not provided.
        """
        self._base_dir = base_dir

    @property
    def base_dir(self) -> Path:
        """Get the output directory for branch files."""
        if self._base_dir is None:
            self._base_dir = get_settings().output_dir
        return self._base_dir

    @staticmethod
    def validate_file_path(file_path: str) -> Path:
        """
        Validate that a path points to an existing regular file.

        Raises:
            CurveFormatError: If the path is missing or not a file.
        """
        path = Path(file_path)
        if not path.exists():
            raise CurveFormatError(f"File not found: {file_path}")
        if not path.is_file():
            raise CurveFormatError(f"Not a file: {file_path}")
        return path

    def load_curve(self, file_path: str) -> NurbsCurve:
        """
        Parse and validate a curve JSON file.

        Raises:
            CurveFormatError: On unreadable JSON, schema violations or invalid curve data.
        """
        path = self.validate_file_path(file_path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise CurveFormatError(f"{file_path}: not valid JSON ({e})") from e
        try:
            model = CurveFileModel.model_validate(raw)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()
            )
            raise CurveFormatError(f"{file_path}: {problems}") from e
        try:
            curve = NurbsCurve.from_arrays(model.degree, model.points, model.knots, model.weights)
        except CurveFormatError as e:
            raise CurveFormatError(f"{file_path}: {e}") from e
        logger.info("Loaded %r from %s", curve, path)
        return curve

    @staticmethod
    def curve_to_json(curve: NurbsCurve) -> str:
        payload = CurveFileModel(
            degree=curve.degree,
            knots=[float(u) for u in curve.knots],
            points=[tuple(float(x) for x in p) for p in curve.points],
            weights=None if curve.is_polynomial else [float(w) for w in curve.weights],
        )
        return payload.model_dump_json(indent=2, exclude_none=True) + "\n"

    def read_branch(self, file_path: str) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Read a branch CSV with header ``t,T,dT``.

        Returns:
            Arrays (t, T, dT).

        Raises:
            BranchFormatError: On a wrong header, non-numeric cells, no rows or unordered t.
        """
        path = self.validate_file_path(file_path)
        rows: List[Tuple[float, float, float]] = []
        with path.open(newline="", encoding="utf-8") as f:
            reader = csv.reader(f)
            header = next(reader, None)
            if header is None or [h.strip() for h in header] != BRANCH_HEADER:
                raise BranchFormatError(f"{file_path}: expected header 't,T,dT', got {header}")
            for line_no, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 3:
                    raise BranchFormatError(f"{file_path}:{line_no}: expected 3 columns, got {len(row)}")
                try:
                    values = tuple(float(x) for x in row)
                except ValueError as e:
                    raise BranchFormatError(f"{file_path}:{line_no}: {e}") from e
                if not all(np.isfinite(values)):
                    raise BranchFormatError(f"{file_path}:{line_no}: non-finite value")
                rows.append(values)
        if not rows:
            raise BranchFormatError(f"{file_path}: branch has no samples")
        data = np.array(rows)
        if np.any(np.diff(data[:, 0]) <= 0):
            raise BranchFormatError(f"{file_path}: t must be strictly increasing")
        return data[:, 0], data[:, 1], data[:, 2]

    @staticmethod
    def branch_to_csv(branch: ReparamBranch) -> str:
        lines = [",".join(BRANCH_HEADER)]
        lines.extend(f"{t!r},{T!r},{dT!r}" for t, T, dT in branch.rows())
        return "\n".join(lines) + "\n"

    def branch_path(self, index: int, out_dir: Optional[Path] = None) -> Path:
        return Path(out_dir or self.base_dir) / f"branch_{index}.csv"

    def write_text(self, path: Path, text: str) -> Path:
        """Write ``text`` to ``path``, creating parent directories."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        logger.info("Wrote %d bytes to %s", len(text), path)
        return path


# Global file storage instance
file_storage = FileStorage()
