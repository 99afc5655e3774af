"""
Utility Functions
"""

import hashlib
import json
import logging
import re
import sys
import zlib
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, Iterable, Union

import numpy as np
import yaml


class ConfigLoader(yaml.SafeLoader):
    """SafeLoader that also reads exponent floats without a dot (1e-3, 1E8)"""


ConfigLoader.add_implicit_resolver(
    'tag:yaml.org,2002:float',
    re.compile(r'''^(?:[-+]?(?:[0-9][0-9_]*)\.[0-9_]*(?:[eE][-+]?[0-9]+)?
                    |[-+]?(?:[0-9][0-9_]*)(?:[eE][-+]?[0-9]+)
                    |\.[0-9_]+(?:[eE][-+]?[0-9]+)?
                    |[-+]?\.(?:inf|Inf|INF)
                    |\.(?:nan|NaN|NAN))$''', re.X),
    list('-+0123456789.')
)


def load_yaml(config_path: Union[str, Path]) -> Dict[str, Any]:
    """
    Load a YAML or JSON mapping from disk

    Args:
        config_path: Path to configuration file (``.json`` files go through json)

    Returns:
        Parsed mapping (empty dict for an empty file)
    """
    config_file = Path(config_path)

    if not config_file.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    with open(config_file, 'r', encoding='utf-8') as f:
        if config_file.suffix.lower() == '.json':
            text = f.read()
            config = json.loads(text) if text.strip() else None
        else:
            config = yaml.load(f, Loader=ConfigLoader)

    return config or {}


def setup_logging(config: Dict[str, Any]) -> logging.Logger:
    """
    Setup logging configuration

    Args:
        config: Logging section (level, file_path, max_bytes, backup_count, console_output)

    Returns:
        Configured root logger
    """
    log_level = str(config.get('level', 'INFO')).upper()
    log_file = config.get('file_path', 'logs/sean.log')
    max_bytes = config.get('max_bytes', 10485760)
    backup_count = config.get('backup_count', 5)
    console_output = config.get('console_output', True)

    logger = logging.getLogger()
    logger.setLevel(getattr(logging, log_level))

    # Repeated CLI invocations in one process must not stack handlers
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=max_bytes,
            backupCount=backup_count
        )
        file_handler.setLevel(getattr(logging, log_level))
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    if console_output:
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setLevel(getattr(logging, log_level))
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    return logger


def stable_key(value: Union[int, str]) -> int:
    """Map an int or string to a non-negative 32-bit integer, stable across processes"""
    if isinstance(value, (int, np.integer)):
        return int(value) & 0xFFFFFFFF
    return zlib.crc32(str(value).encode('utf-8'))


def derive_rng(seed: int, *keys: Union[int, str]) -> np.random.Generator:
    """
    Build an independent generator for one (seed, key...) combination

    Selection for different users can then run in any order, or in parallel,
    and still draw the same numbers.

    Args:
        seed: Run seed
        *keys: Ints or strings identifying the stream (e.g. day, user id)

    Returns:
        numpy Generator
    """
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF] + [stable_key(k) for k in keys]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def hash_files(paths: Iterable[Union[str, Path]]) -> str:
    """
    SHA-256 over the contents of several files, in the given order

    Args:
        paths: Files to hash; missing files contribute their name only

    Returns:
        Hex digest
    """
    digest = hashlib.sha256()
    for path in paths:
        path = Path(path)
        digest.update(path.name.encode('utf-8'))
        if path.exists():
            with open(path, 'rb') as f:
                for chunk in iter(lambda: f.read(1 << 20), b''):
                    digest.update(chunk)
    return digest.hexdigest()
