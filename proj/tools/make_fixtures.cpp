// Writes the fixture files into the directory given on the command line.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "../tests/fixtures.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <directory>\n";
    return 1;
  }
  const std::filesystem::path root = argv[1];
  for (const auto& [relative, contents] : fixtures::fixture_files()) {
    const auto path = root / relative;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path) << contents;
    std::cout << path.string() << "\n";
  }
  return 0;
}
