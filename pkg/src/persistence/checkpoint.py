"""
Checkpoints
Integrity-checked binary snapshots of parameters, optimizer and exploration state
"""

import hashlib
import json
import logging
import pickle
import struct
from pathlib import Path
from typing import Any, Dict, Optional, Union

from ..exceptions import CheckpointError

logger = logging.getLogger(__name__)

MAGIC = b"SEANCKPT"
FORMAT_VERSION = 1
# magic, format version, payload length, sha256 of payload
_HEADER = struct.Struct('>8sIQ32s')


def checkpoint_path(directory: Union[str, Path], day: int) -> Path:
    return Path(directory) / f"day_{day}.ckpt"


def state_path(directory: Union[str, Path], day: int) -> Path:
    return Path(directory) / f"state_{day}.json"


def save_checkpoint(path: Union[str, Path], payload: Dict[str, Any]):
    """
    Write a checkpoint file

    Args:
        path: Destination
        payload: Picklable mapping (numpy arrays are stored bit-exact)
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    body = pickle.dumps(payload, protocol=pickle.HIGHEST_PROTOCOL)
    header = _HEADER.pack(MAGIC, FORMAT_VERSION, len(body), hashlib.sha256(body).digest())

    tmp = path.with_suffix(path.suffix + '.tmp')
    try:
        with open(tmp, 'wb') as f:
            f.write(header)
            f.write(body)
        tmp.replace(path)
    except OSError as e:
        raise CheckpointError(str(path), f"cannot write checkpoint ({e})")
    logger.debug(f"Saved checkpoint {path} ({len(body)} bytes)")


def load_checkpoint(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read and verify a checkpoint file

    Args:
        path: Checkpoint file

    Returns:
        The saved payload
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise CheckpointError(str(path), f"cannot read checkpoint ({e})")

    if len(data) < _HEADER.size:
        raise CheckpointError(str(path), f"truncated header ({len(data)} of {_HEADER.size} bytes)",
                              offset=len(data))
    magic, version, length, digest = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CheckpointError(str(path), "not a checkpoint file (bad magic)", offset=0)
    if version != FORMAT_VERSION:
        raise CheckpointError(str(path), f"unsupported checkpoint version {version}", offset=8)

    body = data[_HEADER.size:]
    if len(body) < length:
        raise CheckpointError(str(path), f"truncated payload ({len(body)} of {length} bytes)",
                              offset=_HEADER.size + len(body))
    body = body[:length]
    if hashlib.sha256(body).digest() != digest:
        raise CheckpointError(str(path), "payload checksum mismatch", offset=_HEADER.size)
    return pickle.loads(body)


def save_state_json(path: Union[str, Path], document: Dict[str, Any]):
    """Human-readable companion of a checkpoint"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(document, f, indent=2, sort_keys=True)
        f.write('\n')


def load_state_json(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise CheckpointError(str(path), f"cannot read state file ({e})")


def latest_checkpoint_day(directory: Union[str, Path]) -> Optional[int]:
    """Highest day with a checkpoint in ``directory``, if any"""
    directory = Path(directory)
    if not directory.is_dir():
        return None
    days = []
    for file in directory.glob('day_*.ckpt'):
        suffix = file.stem[len('day_'):]
        if suffix.isdigit():
            days.append(int(suffix))
    return max(days) if days else None
