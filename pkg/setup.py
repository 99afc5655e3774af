#!/usr/bin/env python3
"""
SEAN Simulator - Environment Bootstrap
Virtual environment, scientific stack, working directories and an optional starter dataset
"""

import argparse
import platform
import subprocess
import sys
from pathlib import Path

VENV = Path("venv")
MIN_PYTHON = (3, 9)
# import name -> requirement name, checked after installation
STACK = {
    "numpy": "numpy",
    "pandas": "pandas",
    "scipy": "scipy",
    "sklearn": "scikit-learn",
    "yaml": "pyyaml",
    "networkx": "networkx",
}
WORK_DIRS = ["data", "logs", "results"]


def print_header(text):
    print("\n" + "=" * 60)
    print(f"  {text}")
    print("=" * 60 + "\n")


def print_step(step_num, total, text):
    print(f"\n[{step_num}/{total}] {text}...")


def venv_executable(name):
    """Path of an executable inside the virtual environment"""
    if platform.system() == "Windows":
        return VENV / "Scripts" / f"{name}.exe"
    return VENV / "bin" / name


def require_python():
    found = sys.version_info[:2]
    if found < MIN_PYTHON:
        wanted = ".".join(map(str, MIN_PYTHON))
        print(f"❌ Python {wanted}+ required, found {found[0]}.{found[1]}")
        return False
    print(f"✅ Python {platform.python_version()} ({platform.system()})")
    return True


def ensure_venv():
    if venv_executable("python").exists():
        print(f"⚠️  Reusing existing environment in {VENV}/")
        return True
    result = subprocess.run([sys.executable, "-m", "venv", str(VENV)], capture_output=True, text=True)
    if result.returncode != 0:
        print(f"❌ venv failed: {result.stderr.strip()}")
        return False
    print(f"✅ Environment created in {VENV}/")
    return True


def install_stack(requirements):
    """pip install into the environment; returns False on failure"""
    python = str(venv_executable("python"))
    subprocess.run([python, "-m", "pip", "install", "--quiet", "--upgrade", "pip"],
                   stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)

    print(f"  pip install -r {requirements}")
    result = subprocess.run([python, "-m", "pip", "install", "-r", requirements],
                            capture_output=True, text=True)
    if result.returncode != 0:
        print("❌ Dependency installation failed")
        print(result.stderr.strip()[-2000:])
        return False
    return True


def verify_stack():
    """Import every runtime package inside the environment"""
    python = str(venv_executable("python"))
    missing = []
    for module, requirement in STACK.items():
        check = subprocess.run([python, "-c", f"import {module}"], capture_output=True)
        status = "✅" if check.returncode == 0 else "❌"
        print(f"  {status} {requirement}")
        if check.returncode != 0:
            missing.append(requirement)
    if missing:
        print(f"❌ Not importable: {', '.join(missing)}")
    return not missing


def make_work_dirs():
    for directory in WORK_DIRS:
        Path(directory).mkdir(exist_ok=True)
    print(f"  ✅ {', '.join(d + '/' for d in WORK_DIRS)}")


def generate_starter_dataset():
    """Default synthetic dataset into data/synthetic"""
    python = str(venv_executable("python"))
    target = Path("data") / "synthetic"
    if (target / "graph.tsv").exists():
        print(f"⚠️  {target}/ already holds a dataset, skipping")
        return True
    result = subprocess.run([python, "src/main.py", "generate", "--out", str(target)])
    return result.returncode == 0


def print_next_steps(with_data):
    print_header("Setup Complete!")
    activate = r"venv\Scripts\activate" if platform.system() == "Windows" else "source venv/bin/activate"
    steps = [f"Activate the environment:\n   {activate}"]
    if not with_data:
        steps.append("Generate a dataset:\n   python src/main.py generate --out data/synthetic")
    steps += [
        "Run the simulator:\n   python run.py",
        "Compare friend selection modes:\n   python run.py --compare",
        "Run the tests:\n   pytest",
    ]
    for i, step in enumerate(steps, start=1):
        print(f"{i}. {step}\n")
    print("📖 Documentation: README.md")


def main():
    parser = argparse.ArgumentParser(description="Bootstrap the SEAN simulator environment")
    parser.add_argument("--core", action="store_true", help="Install runtime packages only (no pytest)")
    parser.add_argument("--with-data", action="store_true", help="Also generate the default synthetic dataset")
    args = parser.parse_args()

    print_header("SEAN Simulator - Setup")
    total = 5 if args.with_data else 4
    requirements = "requirements-core.txt" if args.core else "requirements.txt"

    print_step(1, total, "Checking Python")
    if not require_python():
        return 1

    print_step(2, total, "Preparing virtual environment")
    if not ensure_venv():
        return 1

    print_step(3, total, f"Installing {requirements}")
    if not install_stack(requirements) or not verify_stack():
        return 1

    print_step(4, total, "Creating working directories")
    make_work_dirs()

    if args.with_data:
        print_step(5, total, "Generating the starter dataset")
        if not generate_starter_dataset():
            print("❌ Dataset generation failed; see logs above")
            return 1

    print_next_steps(args.with_data)
    return 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\n❌ Setup cancelled")
        sys.exit(1)
