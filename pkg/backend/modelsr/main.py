from fastapi import FastAPI

from . import __version__
from .api import experiments, models
from .config import configure_logging

configure_logging()

app = FastAPI(
    title="Model-SR",
    description="Model-based super-resolution: fit, extrapolate and verify low-frequency Fourier data",
    version=__version__
)

# Include routers
app.include_router(models.router, prefix="/api/models", tags=["models"])
app.include_router(experiments.router, prefix="/api/experiments", tags=["experiments"])

@app.get("/health")
async def health_check():
    return {"status": "healthy", "message": "Model-SR API is running"}

@app.get("/")
async def root():
    return {"message": "Welcome to the Model-SR API"}

if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
