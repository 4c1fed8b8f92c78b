#include <stdio.h>
#include <string.h>

#include "ptolemy.h"

#define CHECK(x)                                                               \
  do {                                                                         \
    if (!(x)) {                                                                \
      fprintf(stderr, "line %d: %s\n", __LINE__, #x);                          \
      return 1;                                                                \
    }                                                                          \
  } while (0)

int main(void) {
  PtolemyGraph *g = NULL;
  CHECK(ptolemy_graph_symplectic(2, &g) == PTOLEMY_STATUS_OK);
  size_t genus = 0, darts = 0;
  CHECK(ptolemy_graph_genus(g, &genus) == PTOLEMY_STATUS_OK && genus == 2);
  CHECK(ptolemy_graph_num_darts(g, &darts) == PTOLEMY_STATUS_OK && darts == 22);

  PtolemySequence *s = NULL;
  CHECK(ptolemy_sequence_new(g, &s) == PTOLEMY_STATUS_OK);
  uint32_t d = 1;
  while (ptolemy_sequence_push(s, d) != PTOLEMY_STATUS_OK) {
    CHECK(++d <= darts);
  }
  size_t len = 0;
  CHECK(ptolemy_sequence_len(s, &len) == PTOLEMY_STATUS_OK && len == 1);
  CHECK(ptolemy_sequence_push(s, 0) == PTOLEMY_STATUS_PARSE);
  char msg[128];
  CHECK(ptolemy_last_error_message(msg, sizeof msg) > 0);

  int64_t m[16];
  size_t dim = 0;
  CHECK(ptolemy_sequence_sp(s, m, 16, &dim) == PTOLEMY_STATUS_OK && dim == 4);

  char *text = NULL;
  CHECK(ptolemy_graph_to_string(g, &text) == PTOLEMY_STATUS_OK);
  PtolemyGraph *h = NULL;
  CHECK(ptolemy_graph_parse(text, &h) == PTOLEMY_STATUS_OK);
  bool same = false;
  CHECK(ptolemy_graph_isomorphic(g, h, &same) == PTOLEMY_STATUS_OK && same);
  ptolemy_string_free(text);

  bool accepted = false;
  size_t cycles = 0;
  char *diagram = NULL;
  CHECK(ptolemy_word_realize("1 2 -1 -2", &accepted, &cycles, &diagram) == PTOLEMY_STATUS_OK);
  CHECK(accepted && cycles == 1 && strncmp(diagram, "core: 4", 7) == 0);
  ptolemy_string_free(diagram);

  ptolemy_sequence_free(s);
  ptolemy_graph_free(h);
  ptolemy_graph_free(g);
  puts("ok");
  return 0;
}
