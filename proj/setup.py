"""Builds the _magcrit extension by delegating to the project's CMake tree."""

import os
import subprocess
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str, sourcedir: str = "") -> None:
        super().__init__(name, sources=[])
        self.sourcedir = os.fspath(Path(sourcedir).resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        import pybind11

        extdir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_temp = Path(self.build_temp) / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)

        configure = [
            "cmake",
            ext.sourcedir,
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={extdir}{os.sep}",
            "-DCMAKE_BUILD_TYPE=Release",
            f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
            "-DSKBUILD=ON",  # wheel build: skip the native test targets
        ]
        build = ["cmake", "--build", ".", "--target", "_magcrit",
                 f"-j{os.cpu_count() or 2}"]
        subprocess.run(configure, cwd=build_temp, check=True)
        subprocess.run(build, cwd=build_temp, check=True)


setup(
    ext_modules=[CMakeExtension("magcrit._magcrit")],
    cmdclass={"build_ext": CMakeBuild},
)
