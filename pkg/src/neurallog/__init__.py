"""Parser-free log anomaly detection toolkit.

Pipeline: preprocess raw messages, tokenize to subwords, embed into semantic
vectors, classify windows with a transformer encoder. Also ships the Drain and
Spell parsers, a log-count-vector Logistic Regression baseline, and the
out-of-vocabulary / parsing-error study tools used to motivate the parser-free
design.
"""

__version__ = "0.1.0"
