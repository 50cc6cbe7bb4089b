# Quantum f-Correlation Quantifier
