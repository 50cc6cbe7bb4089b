# Operator Monotone Function Catalog
