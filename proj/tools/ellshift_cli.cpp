#include <cstdio>

int main() {
  std::puts("ellshift: CLI not wired up yet");
  return 0;
}
