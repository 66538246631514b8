"""cltseval: evaluation toolkit for cross-lingual text simplification.

Pipelines: corpus preprocessing (translation augmentation + similarity
filtering), five-strategy prompt generation over pluggable backends,
automatic metrics (BLEU, SARI, embedding similarity), a linguistic feature
suite over CoNLL-U annotations, significance testing, and an
inter-annotator-agreement simulation.
"""

__version__ = "0.1.0"
