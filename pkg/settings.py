import os
import logging
from dataclasses import dataclass
from logging.config import dictConfig
from dotenv import load_dotenv

# import from .env
load_dotenv()
WORKERS = os.getenv('SCAVENGER_WORKERS')
LOG_LEVEL = os.getenv('SCAVENGER_LOG_LEVEL', 'INFO').upper()
LOG_FILE = os.getenv('SCAVENGER_LOG_FILE', 'logs/scavenger.log')

# search bounds
HEIGHT = int(os.getenv('SCAVENGER_HEIGHT', '12'))
BOX = int(os.getenv('SCAVENGER_BOX', '10'))
CAP = int(os.getenv('SCAVENGER_CAP', '1000'))
D_BOUND = int(os.getenv('SCAVENGER_D_BOUND', '100'))
POOL_HEIGHT = int(os.getenv('SCAVENGER_POOL_HEIGHT', '60'))


@dataclass(frozen=True)
class RunConfig:
    """
    Bounds shared by the search commands.

    Attributes:
        height (int): Height of the Farey parameter list.
        box (int): Half-width of the greedy candidate box.
        cap (int): Vertex cap of the greedy search.
        d_bound (int): Largest integer d tried by scan-d.
        pool_height (int): Numerator bound of vector pools.
        workers (int): Worker processes.
        output (str | None): Where to write a certificate.
    """
    height: int = HEIGHT
    box: int = BOX
    cap: int = CAP
    d_bound: int = D_BOUND
    pool_height: int = POOL_HEIGHT
    workers: int = 1
    output: str | None = None

    def __post_init__(self):
        for name in ("height", "box", "cap", "d_bound", "pool_height", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


def resolve_workers(requested: int) -> int:
    """SCAVENGER_WORKERS wins over the command line."""
    return int(WORKERS) if WORKERS else requested


# logging
log_dir = os.path.dirname(LOG_FILE)
if log_dir:
    os.makedirs(log_dir, exist_ok=True)

LOGGING_CONFIG = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "%(levelname)-10s - %(asctime)s - %(module)-15s : %(message)s"
        },
        "standard": {"format": "%(levelname)-10s - %(name)-15s : %(message)s"},
    },
    "handlers": {
        "console": {
            "level": "WARNING",
            "class": "logging.StreamHandler",
            "formatter": "standard",
        },
        "file": {
            "level": "DEBUG",
            "class": "logging.FileHandler",
            "filename": LOG_FILE,
            "mode": "a",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "scavenger": {"handlers": ["console", "file"], "level": LOG_LEVEL, "propagate": False},
    }
}

dictConfig(LOGGING_CONFIG)
