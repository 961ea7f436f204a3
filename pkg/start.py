"""
Startup script for NomaHarq
Runs the FastAPI application with proper Python path setup
"""

import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

# Now import and run the main application
if __name__ == "__main__":
    from orchestration.main import app
    from configs.settings import settings
    import uvicorn

    print("=" * 60)
    print(f"Starting {settings.APP_NAME} Server")
    print("=" * 60)
    print(f"Project Root: {project_root}")
    print(f"Server URL: http://{settings.HOST}:{settings.PORT}")
    print(f"API docs:   http://{settings.HOST}:{settings.PORT}/docs")
    print("=" * 60)
    print()

    uvicorn.run(app, host=settings.HOST, port=settings.PORT, log_level=settings.LOG_LEVEL.lower())
