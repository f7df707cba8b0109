#ifndef INDEXFORGE_FILE_IO_HPP_INCLUDED
#define INDEXFORGE_FILE_IO_HPP_INCLUDED

#include <filesystem>
#include <string>

namespace indexforge {

/// Reads a whole file; throws IoError naming the path when it is missing
/// or unreadable.
std::string read_file(const std::filesystem::path& path);

/// Writes bytes, creating parent directories as needed.
void write_file(const std::filesystem::path& path, std::string_view bytes);

} // namespace indexforge

#endif
