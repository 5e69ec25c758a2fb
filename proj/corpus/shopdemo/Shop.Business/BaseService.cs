using Acme.Logging;

namespace Shop.Business
{
    public abstract class BaseService
    {
        protected void Audit(string message)
        {
            Logger.Info("[audit] " + message);
        }
    }
}
