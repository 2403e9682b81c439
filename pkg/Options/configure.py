import logging
import os

from Errors import SpecError

logger = logging.getLogger(__name__)


def load_config(path: str) -> dict[str, str]:
    """Read a flat ``key = value`` config file.

    Keys are normalised to the argparse destination form (dashes become
    underscores). Blank lines and ``#`` comments are skipped.

    Args:
        path (str): config file path

    Returns:
        dict[str, str]: raw string values, converted later by the CLI parser
    """
    if not os.path.isfile(path):
        raise FileNotFoundError(f"Config file not found: {path}")

    values: dict[str, str] = {}
    with open(path, "r", encoding="utf8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SpecError(f"{path}:{number}: expected 'key = value', got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if not key:
                raise SpecError(f"{path}:{number}: empty key")
            values[key.lstrip("-").replace("-", "_")] = value
    logger.debug("Loaded %d config entries from %s", len(values), path)
    return values
