"""Data Records and Loaders"""
from .records import Document, Sample
from .loader import load_documents, load_logs, load_payouts

__all__ = ['Document', 'Sample', 'load_documents', 'load_logs', 'load_payouts']
