export { serve, type ServerOptions } from './server.js';
export {
  createBackend,
  DeterministicBackend,
  ProxyBackend,
  DEFAULT_MODELS,
  type Backend,
  type BackendConfig,
} from './backends.js';
export {
  KINDS,
  parseRequestLine,
  okResponse,
  errorResponse,
  serializeResponse,
  requestSchema,
  responseSchema,
  type Kind,
  type AdapterRequest,
  type AdapterResponse,
} from './protocol.js';
