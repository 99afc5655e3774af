"""
Dataset Records
Plain containers shared by the graph, text and simulation packages
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Document:
    """A published document"""
    id: str
    author: str
    day: int
    text: str


@dataclass(frozen=True)
class Sample:
    """A (user, document, day, label) training or test triplet"""
    user: str
    doc: str
    day: int
    label: int  # 1 iff the user responded to the doc that day
