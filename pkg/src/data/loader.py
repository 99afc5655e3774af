"""
Dataset Table Readers
Reads docs.jsonl, logs.tsv and payouts.tsv into typed containers
"""

import json
import logging
from pathlib import Path
from typing import Dict, Union

import pandas as pd

from ..exceptions import DataError
from .records import Document

logger = logging.getLogger(__name__)

LOG_COLUMNS = ['user', 'doc_id', 'day']
PAYOUT_COLUMNS = ['user', 'day', 'amount']


def load_documents(path: Union[str, Path]) -> Dict[str, Document]:
    """
    Load docs.jsonl

    Args:
        path: One JSON object per line with id, author, day, text

    Returns:
        Documents keyed by id
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"documents file not found: {path}")

    docs: Dict[str, Document] = {}
    with open(path, 'r', encoding='utf-8') as f:
        for line_number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                doc = Document(
                    id=str(record['id']),
                    author=str(record['author']),
                    day=int(record['day']),
                    text=str(record.get('text', ''))
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
                raise DataError(f"{path}:{line_number}: invalid document record ({e})")
            if doc.id in docs:
                raise DataError(f"{path}:{line_number}: duplicate document id '{doc.id}'")
            docs[doc.id] = doc

    logger.info(f"Loaded {len(docs)} documents from {path}")
    return docs


def load_logs(path: Union[str, Path]) -> pd.DataFrame:
    """
    Load logs.tsv (``user<TAB>doc_id<TAB>day``)

    Repeated (user, doc_id, day) rows collapse to one positive response.

    Args:
        path: Log file

    Returns:
        DataFrame with columns user, doc_id, day sorted by day, user, doc_id
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"logs file not found: {path}")

    if path.stat().st_size == 0:
        return pd.DataFrame({'user': pd.Series(dtype=str), 'doc_id': pd.Series(dtype=str), 'day': pd.Series(dtype='int64')})

    try:
        logs = pd.read_csv(
            path, sep='\t', header=None, names=LOG_COLUMNS,
            dtype={'user': str, 'doc_id': str, 'day': 'int64'},
            comment='#', skip_blank_lines=True
        )
    except (ValueError, pd.errors.ParserError) as e:
        raise DataError(f"{path}: malformed log file ({e})")

    if logs[['user', 'doc_id']].isna().any().any():
        raise DataError(f"{path}: log rows with missing fields")

    before = len(logs)
    logs = logs.drop_duplicates().sort_values(['day', 'user', 'doc_id'], kind='mergesort')
    logs = logs.reset_index(drop=True)
    if len(logs) < before:
        logger.warning(f"Dropped {before - len(logs)} duplicate log rows from {path}")

    logger.info(f"Loaded {len(logs)} logs from {path}")
    return logs


def load_payouts(path: Union[str, Path]) -> pd.DataFrame:
    """
    Load payouts.tsv (``user<TAB>day<TAB>amount``)

    Args:
        path: Payout file

    Returns:
        DataFrame with columns user, day, amount
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"payouts file not found: {path}")

    if path.stat().st_size == 0:
        return pd.DataFrame({'user': pd.Series(dtype=str), 'day': pd.Series(dtype='int64'), 'amount': pd.Series(dtype='float64')})

    try:
        payouts = pd.read_csv(
            path, sep='\t', header=None, names=PAYOUT_COLUMNS,
            dtype={'user': str, 'day': 'int64', 'amount': 'float64'},
            comment='#', skip_blank_lines=True
        )
    except (ValueError, pd.errors.ParserError) as e:
        raise DataError(f"{path}: malformed payout file ({e})")

    negative = payouts[payouts['amount'] < 0]
    if not negative.empty:
        row = negative.iloc[0]
        raise DataError(f"{path}: negative payout {row['amount']} for '{row['user']}' on day {row['day']}")

    logger.info(f"Loaded {len(payouts)} payout rows from {path}")
    return payouts
