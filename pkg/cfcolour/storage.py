import csv
import json
import logging
from pathlib import Path
from typing import Iterable, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from cfcolour.exceptions import InputError
from cfcolour.models import BenchRow, InstanceFile, RunReport

logger = logging.getLogger(__name__)

BENCH_HEADER = ["family", "n", "t", "seed", "algorithm", "tokens", "edges_of_G", "valid", "millis"]

Document = TypeVar("Document", bound=BaseModel)


def _load(path: Path, model: Type[Document]) -> Document:
    try:
        payload = json.loads(Path(path).read_text())
        document = model.model_validate(payload)
    except OSError as e:
        logger.error(f"Could not open {path}: {e}")
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e
    except (json.JSONDecodeError, ValidationError) as e:
        logger.error(f"Could not read {model.__name__} from {path}: {e}")
        raise InputError(f"malformed {model.__name__} in {path}: {e}") from e
    logger.info(f"Loaded {model.__name__} from {path}.")
    return document


def _dump(document: BaseModel) -> str:
    return json.dumps(document.model_dump(mode="json", exclude_none=True), indent=2, sort_keys=True) + "\n"


def load_instance(path: Path) -> InstanceFile:
    """Read an instance file."""
    return _load(path, InstanceFile)


def load_report(path: Path) -> RunReport:
    """Read a run report."""
    return _load(path, RunReport)


def write_document(document: BaseModel, path: Optional[Path] = None) -> str:
    """Serialize `document` as sorted JSON; write it to `path` when given."""
    text = _dump(document)
    if path is not None:
        Path(path).write_text(text)
        logger.info(f"Wrote {type(document).__name__} to {path}.")
    return text


def write_bench(rows: Iterable[BenchRow], path: Path) -> int:
    """Write bench rows as CSV; returns the row count."""
    count = 0
    with open(path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=BENCH_HEADER)
        writer.writeheader()
        for row in rows:
            record = row.model_dump()
            record["valid"] = str(row.valid).lower()
            record["edges_of_G"] = "" if row.edges_of_G is None else row.edges_of_G
            record["millis"] = f"{row.millis:.3f}"
            writer.writerow(record)
            count += 1
    logger.info(f"Wrote {count} bench rows to {path}.")
    return count
