import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "bogotool._core",
    sources=sorted(glob.glob("src/*.cpp")) + ["bindings/py_core.cpp"],
    include_dirs=["include", "vendor"],
    cxx_std=20,
    extra_compile_args=["-O2"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
