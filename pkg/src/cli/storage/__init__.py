"""File storage for the command line."""

from .file_storage import FileStorage

# The ``file_storage`` instance is not re-exported here: binding it on the
# package would shadow the ``file_storage`` submodule of the same name.
__all__ = ["FileStorage"]
