# Hermitian Core
