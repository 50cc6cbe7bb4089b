# Quantum f-Correlations Toolkit
