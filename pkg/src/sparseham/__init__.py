"""Polynomial-space Monte Carlo Hamiltonicity detection for sparse digraphs."""

from .engine import DetectionReport, EngineConfig, decide_hamiltonicity
from .graph import DirectedGraph, parse_graph, split_vertex

__all__ = ["DetectionReport", "DirectedGraph", "EngineConfig", "decide_hamiltonicity", "parse_graph", "split_vertex"]
