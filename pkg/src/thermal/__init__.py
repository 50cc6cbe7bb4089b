# Thermal Fluctuation-Dissipation Routes
