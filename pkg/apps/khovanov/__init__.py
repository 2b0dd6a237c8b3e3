# Exact Khovanov / Lee homology engine with partial-resolution spectral sequences
