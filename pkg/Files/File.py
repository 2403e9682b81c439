import logging
import os
import tempfile

logger = logging.getLogger(__name__)


class File:
    def __init__(self, path: str = "", mode: str = "rb", encoding: str = "utf8") -> None:
        self.path = path
        self.mode = mode
        self.file = None
        self.encoding = encoding

    def write_atomic(self, data: bytes) -> None:
        """
        Write bytes through a temporary file in the target directory, then rename.

        Args:
            data (bytes): full file content
        """
        directory = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(directory, exist_ok=True)
        handle, temp_path = tempfile.mkstemp(prefix=".tmp-", dir=directory)
        try:
            with os.fdopen(handle, "wb") as temp:
                temp.write(data)
                temp.flush()
                os.fsync(temp.fileno())
            os.replace(temp_path, self.path)
        except OSError as ose:
            if os.path.exists(temp_path):
                os.unlink(temp_path)
            raise OSError(f"Error writing {self.path}: {ose}")
        logger.debug("Wrote %d bytes to %s", len(data), self.path)

    def open(self):
        try:
            if os.path.exists(self.path) and os.path.isfile(self.path):
                if 'b' in self.mode:
                    self.file = open(self.path, self.mode)
                else:
                    self.file = open(self.path, self.mode, encoding=self.encoding)
            else:
                raise FileNotFoundError(f"File not found: {self.path}")
        except FileNotFoundError:
            raise
        except OSError as ose:
            raise OSError(f"Error opening {self.path}: {ose}")

    def read_all(self) -> bytes:
        self.open()
        try:
            return self.file.read()
        finally:
            self.close()

    def close(self):
        if self.file:
            self.file.close()
            self.file = None

