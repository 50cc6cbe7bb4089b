# Correlation Functionals
