# Multicover - Cover-Boundedness Game Engine
