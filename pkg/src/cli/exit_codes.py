"""Process exit codes of the devpatch commands."""

from enum import IntEnum


class ExitCode(IntEnum):
    OK = 0
    INPUT_ERROR = 1
    NO_MONOTONE_BRANCH = 2  # also a refused regression in export / unroll
    RESIDUAL_VIOLATION = 3
    CURVATURE_FAILURE = 4
