# Dilation and Contraction Checks
