#include "braille/pipeline.hpp"

namespace braille {

CompiledJob compile_text(std::string_view utf8, Backend backend, const Settings& settings) {
  CompiledJob job;
  job.encoded = encode_text(utf8, settings.policy);
  job.layout = layout_document(job.encoded.tokens, settings.layout());
  job.program = generate(job.layout, backend);
  return job;
}

SimTime estimate_time(std::string_view utf8, Backend backend, const Settings& settings) {
  return estimate_time(compile_text(utf8, backend, settings).program, settings.machine);
}

}  // namespace braille
