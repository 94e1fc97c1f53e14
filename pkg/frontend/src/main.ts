#!/usr/bin/env node
import { serve } from './server.js';
import { KINDS, type Kind } from './protocol.js';

function parseArgs(argv: string[]) {
  const options: { kind: Kind | 'all'; proxyUrl?: string } = { kind: 'all' };
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === '--kind') {
      const value = argv[++i];
      if (value !== 'all' && !KINDS.includes(value as Kind)) {
        throw new Error(`--kind must be one of ${['all', ...KINDS].join(', ')}`);
      }
      options.kind = value as Kind | 'all';
    } else if (arg === '--proxy-url') {
      options.proxyUrl = argv[++i];
    } else if (arg === '--help' || arg === '-h') {
      process.stdout.write(
        'usage: amrpara-adapter [--kind all|text_to_amr|amr_to_text|perplexity|embed] [--proxy-url URL]\n' +
          'Reads protocol request lines on stdin, writes response lines on stdout.\n',
      );
      process.exit(0);
    } else {
      throw new Error(`unknown argument ${arg}`);
    }
  }
  return options;
}

async function main() {
  let options;
  try {
    options = parseArgs(process.argv.slice(2));
  } catch (e) {
    process.stderr.write(`error: ${(e as Error).message}\n`);
    process.exit(1);
    return;
  }
  await serve(process.stdin, process.stdout, options);
}

main().catch((e) => {
  process.stderr.write(`fatal: ${e}\n`);
  process.exit(1);
});
